#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracdim {

// Exact-rational mode scalar. Float mode uses long double (64-bit mantissa
// on x86-64), which is what "Real" refers to throughout.
using Rational = boost::multiprecision::cpp_rational;
using Real = long double;

enum class ErrorKind {
    invalid_input,    // bad arguments, broken invariants, parse errors
    resource_budget,  // enumeration/pair budget exceeded
    guard_violation,  // estimator resolution guard violated
    diagnostic,       // cross-check disagreement
};

inline const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid_input";
        case ErrorKind::resource_budget: return "resource_budget";
        case ErrorKind::guard_violation: return "guard_violation";
        case ErrorKind::diagnostic: return "diagnostic";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(Real x) { return static_cast<double>(x); }
inline double to_double(double x) { return x; }

template <class T>
T scalar_abs(const T& x) {
    using std::abs;
    return abs(x);
}

inline Rational scalar_abs(const Rational& x) {
    return x < 0 ? Rational(-x) : x;
}

// Parses "p/q" into an exact rational. Throws on malformed input or q = 0.
Rational parse_rational(std::string_view text);

// True iff the string looks like a "p/q" rational (contains a '/').
inline bool is_rational_literal(std::string_view text) {
    return text.find('/') != std::string_view::npos;
}

// Parses a decimal string into a long double; rejects trailing garbage.
Real parse_real(std::string_view text);

}  // namespace fracdim
