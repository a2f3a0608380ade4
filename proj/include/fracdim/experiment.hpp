#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "fracdim/ifs.hpp"
#include "fracdim/numeric.hpp"

namespace fracdim {

enum class NumberMode { rational, real };

// An IFS in whichever number mode its config literals selected: exact
// rationals when every literal is "p/q", long doubles otherwise. Mixing the
// two forms inside one IFS is rejected.
struct ParsedIfs {
    NumberMode mode = NumberMode::real;
    std::variant<std::monostate, Ifs<Rational>, Ifs<Real>> ifs;

    const Ifs<Rational>& rational() const { return std::get<Ifs<Rational>>(ifs); }
    const Ifs<Real>& real() const { return std::get<Ifs<Real>>(ifs); }
    Ifs<double> as_double() const;
    int alphabet_size() const;
};

struct ExperimentOutcome {
    std::string report;                             // human-readable
    std::map<std::string, std::string> csv_files;   // filename -> content
};

// Parses the JSON config text, runs the named experiment, and returns the
// report plus CSV tables. Throws Error (parse errors, budget, guards) or
// nlohmann parse_error for malformed JSON.
ExperimentOutcome run_experiment(const std::string& config_text);

// Same, but requires the config's "experiment" key to match the given
// subcommand name; a mismatch is an invalid_input error.
ExperimentOutcome run_experiment_kind(const std::string& kind,
                                      const std::string& config_text);

// Exit-code mapping used by the CLI: 0 success, 2 invalid input/parse,
// 3 resource budget, 4 guard violation, 5 cross-check diagnostic.
int exit_code_for(ErrorKind kind);

}  // namespace fracdim
