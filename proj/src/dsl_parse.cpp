#include <cctype>
#include <map>
#include <optional>
#include <vector>

#include "varcalc/dsl.hpp"

namespace varcalc {

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Caret, Slash, LParen, RParen,
                 LBracket, RBracket, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { next(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        next();
        return t;
    }

private:
    void next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= src_.size()) {
            cur_ = {Tok::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        auto single = [&](Tok k) {
            cur_ = {k, std::string(1, c), line_, col_};
            ++pos_;
            ++col_;
        };
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
                ++col_;
            }
            cur_ = {Tok::Ident, src_.substr(start, pos_ - start), line_,
                    col_ - static_cast<int>(pos_ - start)};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++col_;
            }
            cur_ = {Tok::Number, src_.substr(start, pos_ - start), line_,
                    col_ - static_cast<int>(pos_ - start)};
            return;
        }
        switch (c) {
            case '+': single(Tok::Plus); return;
            case '-': single(Tok::Minus); return;
            case '*': single(Tok::Star); return;
            case '^': single(Tok::Caret); return;
            case '/': single(Tok::Slash); return;
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '[': single(Tok::LBracket); return;
            case ']': single(Tok::RBracket); return;
            case ',': single(Tok::Comma); return;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;
};

// One multiplicative term: optional theta factor, a D_N tail, and a
// coefficient polynomial. Sums of these form every parsed value.
struct TermKey {
    int theta = 0; // 0 or 1
    MultiIndex grading;
    MultiIndex deriv;
    auto operator<=>(const TermKey&) const = default;
};

using Value = std::map<TermKey, DiffPoly>;

class Parser {
public:
    Parser(const std::string& src, FieldSpecPtr spec) : lex_(src), spec_(std::move(spec)) {}

    Value parse_all() {
        Value v = parse_expr();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ParseError("unexpected trailing input", t.line, t.col);
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw ParseError(msg, t.line, t.col);
    }

    Token expect(Tok kind, const char* what) {
        const Token& t = lex_.peek();
        if (t.kind != kind) fail(std::string("expected ") + what, t);
        return lex_.take();
    }

    MultiIndex zero_mi() const { return MultiIndex(spec_->n_dims()); }

    void add_into(Value& v, const TermKey& k, const DiffPoly& p) {
        if (p.is_zero()) return;
        auto [it, inserted] = v.emplace(k, p);
        if (!inserted) {
            it->second = it->second + p;
            if (it->second.is_zero()) v.erase(it);
        }
    }

    Value value_const(const Rational& r) {
        Value v;
        add_into(v, TermKey{0, zero_mi(), zero_mi()}, DiffPoly::constant(spec_, r));
        return v;
    }

    Value negate(Value v) {
        for (auto& [k, p] : v) p = -p;
        return v;
    }

    Value add(Value a, const Value& b) {
        for (const auto& [k, p] : b) add_into(a, k, p);
        return a;
    }

    Value mul(const Value& a, const Value& b, const Token& at) {
        Value out;
        for (const auto& [ka, pa] : a) {
            for (const auto& [kb, pb] : b) {
                if (ka.theta + kb.theta > 1)
                    fail("theta may appear at most once per term", at);
                TermKey k;
                k.theta = ka.theta + kb.theta;
                k.grading = ka.theta ? ka.grading : (kb.theta ? kb.grading : zero_mi());
                DiffPoly coeff(spec_);
                if (ka.deriv.is_zero()) {
                    k.deriv = kb.deriv;
                    coeff = pa * pb;
                } else if (pb.is_constant()) {
                    k.deriv = ka.deriv + kb.deriv;
                    coeff = pa * pb;
                } else {
                    fail("a total derivative operator may not multiply a jet expression "
                         "from the left; write the expanded form",
                         at);
                }
                add_into(out, k, coeff);
            }
        }
        return out;
    }

    Value parse_expr() {
        bool neg = false;
        if (lex_.peek().kind == Tok::Plus) lex_.take();
        else if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            neg = true;
        }
        Value acc = parse_term();
        if (neg) acc = negate(std::move(acc));
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool minus = lex_.take().kind == Tok::Minus;
            Value rhs = parse_term();
            acc = add(std::move(acc), minus ? negate(std::move(rhs)) : rhs);
        }
        return acc;
    }

    Value parse_term() {
        Token at = lex_.peek();
        Value acc = parse_factor();
        while (lex_.peek().kind == Tok::Star) {
            Token star = lex_.take();
            Value rhs = parse_factor();
            acc = mul(acc, rhs, star);
        }
        (void)at;
        return acc;
    }

    Value parse_factor() {
        Value base = parse_atom();
        while (lex_.peek().kind == Tok::Caret) {
            Token caret = lex_.take();
            Token n = expect(Tok::Number, "an integer exponent");
            long e = std::stol(n.text);
            Value acc = value_const(Rational(1));
            for (long i = 0; i < e; ++i) acc = mul(acc, base, caret);
            base = std::move(acc);
        }
        return base;
    }

    Value parse_atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Number: {
                Token num = lex_.take();
                Integer n(num.text);
                if (lex_.peek().kind == Tok::Slash) {
                    lex_.take();
                    Token den = expect(Tok::Number, "a denominator");
                    Integer d(den.text);
                    if (d == 0) fail("zero denominator in rational literal", den);
                    Rational r(n, d);
                    r.canonicalize();
                    return value_const(r);
                }
                return value_const(Rational(n));
            }
            case Tok::LParen: {
                lex_.take();
                Value v = parse_expr();
                expect(Tok::RParen, "')'");
                return v;
            }
            case Tok::Ident: {
                Token id = lex_.take();
                if (id.text == "theta") return parse_theta(id);
                if (id.text == "D") return parse_dop(id);
                return value_jetvar(id);
            }
            default:
                fail("expected a factor", t);
        }
    }

    Value parse_theta(const Token& id) {
        expect(Tok::LParen, "'(' after theta");
        std::vector<int> comps;
        if (lex_.peek().kind != Tok::RParen) {
            while (true) {
                Token n = expect(Tok::Number, "a grading component");
                comps.push_back(std::stoi(n.text));
                if (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        MultiIndex grading = zero_mi();
        if (!comps.empty()) {
            if (comps.size() != spec_->n_dims())
                fail("theta grading has " + std::to_string(comps.size()) +
                         " components but the problem has " + std::to_string(spec_->n_dims()) +
                         " coordinates",
                     id);
            grading = MultiIndex(comps);
        }
        Value v;
        add_into(v, TermKey{1, grading, zero_mi()}, DiffPoly::constant(spec_, Rational(1)));
        return v;
    }

    Value parse_dop(const Token& id) {
        expect(Tok::LBracket, "'[' after D");
        Token coord = expect(Tok::Ident, "a coordinate name");
        int dim = spec_->dim_index(coord.text);
        if (dim < 0) fail("unknown coordinate '" + coord.text + "'", coord);
        expect(Tok::RBracket, "']'");
        (void)id;
        Value v;
        add_into(v, TermKey{0, zero_mi(), MultiIndex::unit(spec_->n_dims(), dim)},
                 DiffPoly::constant(spec_, Rational(1)));
        return v;
    }

    Value value_jetvar(const Token& id) {
        auto resolved = resolve_jetvar(id.text);
        if (!resolved) fail("unknown identifier '" + id.text + "'", id);
        Value v;
        add_into(v, TermKey{0, zero_mi(), zero_mi()}, DiffPoly::var(spec_, *resolved));
        return v;
    }

    std::optional<JetVar> resolve_jetvar(const std::string& text) const {
        int idx = spec_->field_index(text);
        if (idx >= 0) return JetVar{idx, zero_mi()};
        // split "name_chain" at every '_', longest field name first
        for (std::size_t pos = text.rfind('_'); pos != std::string::npos;
             pos = (pos == 0) ? std::string::npos : text.rfind('_', pos - 1)) {
            int field = spec_->field_index(text.substr(0, pos));
            if (field < 0) continue;
            auto chain = parse_chain(text.substr(pos + 1));
            if (chain) return JetVar{field, *chain};
        }
        return std::nullopt;
    }

    std::optional<MultiIndex> parse_chain(const std::string& chain) const {
        MultiIndex m = zero_mi();
        std::size_t pos = 0;
        while (pos < chain.size()) {
            bool matched = false;
            // greedy: longest coordinate name first
            std::size_t best_len = 0;
            int best_dim = -1;
            for (std::size_t d = 0; d < spec_->n_dims(); ++d) {
                const std::string& name = spec_->dim_name(d);
                if (chain.compare(pos, name.size(), name) == 0 && name.size() > best_len) {
                    best_len = name.size();
                    best_dim = static_cast<int>(d);
                }
            }
            if (best_dim >= 0) {
                ++m[static_cast<std::size_t>(best_dim)];
                pos += best_len;
                matched = true;
            }
            if (!matched) return std::nullopt;
        }
        if (m.is_zero()) return std::nullopt;
        return m;
    }

    Lexer lex_;
    FieldSpecPtr spec_;
};

} // namespace

GradedDensity parse_density(const std::string& src, const FieldSpecPtr& spec) {
    Parser parser(src, spec);
    Value v = parser.parse_all();
    GradedDensity d(spec);
    for (const auto& [k, p] : v) {
        if (!k.theta)
            throw ParseError("every term of a density must carry a theta(...) factor", 1, 1);
        if (!k.deriv.is_zero())
            throw ParseError("total derivative operators are not allowed in a density", 1, 1);
        d.add_part(k.grading, p);
    }
    return d;
}

GradedOperator parse_operator(const std::string& src, const FieldSpecPtr& spec) {
    if (spec->n_fields() != 1)
        throw ParseError("the operator notation addresses a single field; declare exactly one",
                         1, 1);
    Parser parser(src, spec);
    Value v = parser.parse_all();
    GradedOperator op(spec);
    for (const auto& [k, p] : v) {
        if (!k.theta)
            throw ParseError("every term of an operator must carry a theta(...) factor", 1, 1);
        op.add_coeff(OperatorKey{k.grading, 0, 0, k.deriv}, p);
    }
    return op;
}

} // namespace varcalc
