#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace varcalc {

/// Machine-readable outcome of one CLI invocation. Every numeric payload is
/// a decimal string of an exact rational; nothing is ever a float.
struct Report {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::string> dims;
    std::vector<std::string> fields;
    std::string seed;           // echoed --seed, may be empty
    long long timing_ms = 0;
    int exit_code = 0;
    bool ok = true;
    std::string error;          // set when ok is false

    /// Named result strings in output order (e.g. "adjoint", "residual_nf").
    std::vector<std::pair<std::string, std::string>> results;

    /// is-hamiltonian verdict, present when has_verdict.
    bool has_verdict = false;
    std::string verdict_mode;
    bool verdict_is_hamiltonian = false;
    bool verdict_skew_part_taken = false;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

} // namespace varcalc
