#include "fracdim/numeric.hpp"

#include <cctype>

namespace fracdim {

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view s,
                                             std::string_view whole) {
    if (s.empty())
        fail(ErrorKind::invalid_input,
             "empty integer part in rational '" + std::string(whole) + "'");
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size())
        fail(ErrorKind::invalid_input,
             "sign without digits in rational '" + std::string(whole) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            fail(ErrorKind::invalid_input,
                 "bad digit at position " + std::to_string(k) +
                     " in rational '" + std::string(whole) + "'");
    return boost::multiprecision::cpp_int(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        fail(ErrorKind::invalid_input,
             "expected 'p/q' rational, got '" + std::string(text) + "'");
    auto num = parse_integer(text.substr(0, slash), text);
    auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        fail(ErrorKind::invalid_input,
             "zero denominator in rational '" + std::string(text) + "'");
    return Rational(num, den);
}

Real parse_real(std::string_view text) {
    if (text.empty()) fail(ErrorKind::invalid_input, "empty number");
    std::string s(text);
    std::size_t pos = 0;
    Real value = 0;
    try {
        value = std::stold(s, &pos);
    } catch (const std::exception&) {
        fail(ErrorKind::invalid_input, "bad number '" + s + "'");
    }
    if (pos != s.size())
        fail(ErrorKind::invalid_input,
             "trailing characters after number '" + s + "'");
    return value;
}

}  // namespace fracdim
