#include "legdet/rational.hpp"

#include <stdexcept>

namespace legdet {

std::string rat_str(const Rational& q) {
    return q.get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("parse_rational: empty string");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

} // namespace legdet
