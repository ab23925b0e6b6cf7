#include "varcalc/cli.hpp"

#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "varcalc/dsl.hpp"
#include "varcalc/report.hpp"

namespace varcalc {

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["argv"] = argv;
    j["dims"] = dims;
    j["fields"] = fields;
    j["seed"] = seed.empty() ? nlohmann::json(nullptr) : nlohmann::json(seed);
    j["timing_ms"] = std::to_string(timing_ms);
    j["exit_code"] = exit_code;
    j["ok"] = ok;
    if (!ok) j["error"] = error;
    nlohmann::json res = nlohmann::json::object();
    for (const auto& [k, v] : results) res[k] = v;
    j["results"] = res;
    if (has_verdict) {
        j["verdict"] = {{"mode", verdict_mode},
                        {"is_hamiltonian", verdict_is_hamiltonian},
                        {"skew_part_taken", verdict_skew_part_taken}};
    }
    return j;
}

std::string Report::to_text() const {
    std::string s;
    if (!ok) {
        s += "error: " + error + "\n";
        return s;
    }
    if (has_verdict) {
        s += "mode: " + verdict_mode + "\n";
        s += std::string("is_hamiltonian: ") + (verdict_is_hamiltonian ? "true" : "false") + "\n";
        if (verdict_skew_part_taken) s += "note: skew part of the input operator was used\n";
    }
    for (const auto& [k, v] : results) s += k + ": " + v + "\n";
    return s;
}

namespace {

struct CliOptions {
    std::vector<std::string> dims;
    std::vector<std::string> fields;
    std::string op, f, g, h, density, mode = "graded", method = "frechet", seed;
    std::vector<std::string> directions;
    bool json = false;
};

BracketMethod method_of(const std::string& s) {
    if (s == "frechet") return BracketMethod::Frechet;
    if (s == "euler") return BracketMethod::Euler;
    throw ParseError("unknown --method '" + s + "' (expected frechet or euler)", 1, 1);
}

BracketMode mode_of(const std::string& s) {
    if (s == "graded") return BracketMode::Graded;
    if (s == "classical") return BracketMode::Classical;
    throw ParseError("unknown --mode '" + s + "' (expected graded or classical)", 1, 1);
}

void dispatch(const std::string& cmd, const CliOptions& opt, const FieldSpecPtr& spec,
              Report& report) {
    if (cmd == "adjoint") {
        GradedOperator op = parse_operator(opt.op, spec);
        GradedOperator adj = adjoint(op);
        report.results.emplace_back("adjoint", to_string(adj));
        report.results.emplace_back("adjoint_latex", to_latex(adj));
        return;
    }
    if (cmd == "skew") {
        GradedOperator op = parse_operator(opt.op, spec);
        GradedOperator sk = skew_part(op);
        report.results.emplace_back("skew", to_string(sk));
        report.results.emplace_back("skew_latex", to_latex(sk));
        return;
    }
    if (cmd == "nf") {
        GradedDensity d = parse_density(opt.density, spec);
        report.results.emplace_back("nf", to_string(grading_zero_nf(d)));
        return;
    }
    if (cmd == "sn-self") {
        GradedOperator op = parse_operator(opt.op, spec);
        bool taken = !is_skew_adjoint(op);
        GradedOperator used = taken ? skew_part(op) : op;
        TensorDensity pre = sn_self_bracket_22_pre_nf(used);
        TensorDensity nf = tensor_nf(pre);
        report.has_verdict = true;
        report.verdict_mode = "graded";
        report.verdict_is_hamiltonian = nf.is_zero();
        report.verdict_skew_part_taken = taken;
        report.results.emplace_back("operator_used", to_string(used));
        report.results.emplace_back("sn_self_pre_nf", to_string(pre));
        report.results.emplace_back("sn_self_nf", to_string(nf));
        return;
    }
    if (cmd == "is-hamiltonian") {
        GradedOperator op = parse_operator(opt.op, spec);
        HamiltonianVerdict v = is_hamiltonian(op, mode_of(opt.mode));
        report.has_verdict = true;
        report.verdict_mode = opt.mode;
        report.verdict_is_hamiltonian = v.is_hamiltonian;
        report.verdict_skew_part_taken = v.skew_part_taken;
        report.results.emplace_back("operator_used", to_string(v.operator_used));
        report.results.emplace_back("residual_pre_nf", to_string(v.residual_pre_nf));
        report.results.emplace_back("residual", to_string(v.residual));
        report.results.emplace_back("residual_latex", to_latex(v.residual));
        return;
    }
    if (cmd == "bracket") {
        GradedOperator op = parse_operator(opt.op, spec);
        GradedDensity f = parse_density(opt.f, spec);
        GradedDensity g = parse_density(opt.g, spec);
        GradedDensity raw = poisson_bracket(op, f, g, method_of(opt.method));
        report.results.emplace_back("bracket_pre_nf", to_string(raw));
        report.results.emplace_back("bracket_nf", to_string(grading_zero_nf(raw)));
        return;
    }
    if (cmd == "jacobi") {
        GradedOperator op = parse_operator(opt.op, spec);
        GradedDensity f = parse_density(opt.f, spec);
        GradedDensity g = parse_density(opt.g, spec);
        GradedDensity h = parse_density(opt.h, spec);
        GradedDensity res = jacobi_residual(op, f, g, h, method_of(opt.method));
        report.results.emplace_back("jacobi_residual", to_string(res));
        return;
    }
    if (cmd == "hamvec") {
        GradedOperator op = parse_operator(opt.op, spec);
        GradedDensity h = parse_density(opt.h, spec);
        OneVectorCanonical xi = hamiltonian_vector_field(op, h);
        report.results.emplace_back("hamiltonian_vector_field", to_string(xi));
        return;
    }
    if (cmd == "euler") {
        GradedDensity d = parse_density(opt.density, spec);
        for (const auto& [j, p] : d.parts()) {
            for (std::size_t a = 0; a < spec->n_fields(); ++a) {
                for_each_leq(p.max_deriv(static_cast<int>(a)), [&](const MultiIndex& k) {
                    DiffPoly e = higher_euler(p, static_cast<int>(a), k);
                    if (e.is_zero()) return;
                    std::string name = "E" + k.str() + "[" + spec->field_name(a) + "]";
                    if (!j.is_zero()) name += "@theta" + j.str();
                    report.results.emplace_back(name, to_string(e));
                });
            }
        }
        if (report.results.empty()) report.results.emplace_back("euler", "0");
        return;
    }
    if (cmd == "frechet") {
        GradedDensity f = parse_density(opt.f, spec);
        if (opt.directions.size() != spec->n_fields())
            throw ParseError("frechet needs one --g direction per field", 1, 1);
        std::vector<DiffPoly> dirs;
        for (const auto& src : opt.directions) {
            GradedDensity d = parse_density(src, spec);
            for (const auto& [j, p] : d.parts())
                if (!j.is_zero())
                    throw ParseError("frechet directions must be grading-0 densities", 1, 1);
            dirs.push_back(d.at(MultiIndex(spec->n_dims())));
        }
        GradedDensity out(spec);
        for (const auto& [j, p] : f.parts()) out.add_part(j, frechet(p, dirs));
        report.results.emplace_back("frechet", to_string(out));
        return;
    }
    throw ParseError("unknown subcommand '" + cmd + "'", 1, 1);
}

} // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"varcalc: boundary-graded formal variational calculus"};
    app.require_subcommand(1);

    CliOptions opt;
    std::vector<CLI::App*> subs;
    for (const char* name : {"adjoint", "skew", "sn-self", "is-hamiltonian", "bracket", "jacobi",
                             "hamvec", "euler", "frechet", "nf"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--dims", opt.dims, "coordinate names")->delimiter(',')->required();
        sub->add_option("--fields", opt.fields, "field names")->delimiter(',')->required();
        sub->add_option("--op", opt.op, "graded operator expression");
        sub->add_option("--f", opt.f, "density F");
        sub->add_option("--g", opt.g, "density G / frechet direction")
            ->each([&](const std::string& s) { opt.directions.push_back(s); });
        sub->add_option("--h", opt.h, "density H");
        sub->add_option("--density", opt.density, "density expression");
        sub->add_option("--mode", opt.mode, "graded | classical");
        sub->add_option("--method", opt.method, "frechet | euler");
        sub->add_option("--seed", opt.seed, "seed echoed into the report");
        sub->add_flag("--json", opt.json, "emit the machine-readable report");
        subs.push_back(sub);
    }

    Report report;
    report.argv = argv;

    std::vector<const char*> cargv;
    cargv.push_back("varcalc");
    for (const auto& a : argv) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "command line error: " << e.what() << "\n";
        return 2;
    }

    std::string cmd;
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) cmd = subs[i]->get_name();
    report.command = cmd;
    report.dims = opt.dims;
    report.fields = opt.fields;
    report.seed = opt.seed;

    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](int code) {
        report.exit_code = code;
        report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        if (opt.json)
            out << report.to_json().dump(2) << "\n";
        else
            out << report.to_text();
        return code;
    };

    try {
        auto required = [&](const std::string& v, const char* flag) {
            if (v.empty())
                throw ParseError(std::string("missing required ") + flag + " for " + cmd, 1, 1);
        };
        if (cmd == "adjoint" || cmd == "skew" || cmd == "sn-self" || cmd == "is-hamiltonian" ||
            cmd == "bracket" || cmd == "jacobi" || cmd == "hamvec")
            required(opt.op, "--op");
        if (cmd == "bracket" || cmd == "jacobi" || cmd == "frechet") required(opt.f, "--f");
        if (cmd == "bracket" || cmd == "jacobi") required(opt.g, "--g");
        if (cmd == "jacobi" || cmd == "hamvec") required(opt.h, "--h");
        if (cmd == "nf" || cmd == "euler") required(opt.density, "--density");

        FieldSpecPtr spec = make_spec(opt.dims, opt.fields);
        dispatch(cmd, opt, spec, report);
        return finish(0);
    } catch (const ParseError& e) {
        report.ok = false;
        report.error = e.what();
        err << "parse error: " << e.what() << "\n";
        return finish(2);
    } catch (const PreconditionError& e) {
        report.ok = false;
        report.error = e.what();
        err << "precondition violation: " << e.what() << "\n";
        return finish(3);
    } catch (const std::exception& e) {
        report.ok = false;
        report.error = e.what();
        err << "internal error: " << e.what() << "\n";
        return finish(4);
    }
}

} // namespace varcalc
