#pragma once

#include <gmpxx.h>

#include <string>

namespace legdet {

// Exact scalars. mpq_class keeps the canonical-form invariants we rely on
// everywhere: gcd(|num|, den) = 1, den > 0, zero is 0/1.
using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rendering: "num/den", or just "num" when den = 1.
std::string rat_str(const Rational& q);

/// Parses "num", "-num", "num/den". Throws std::invalid_argument on junk
/// or a zero denominator.
Rational parse_rational(const std::string& s);

bool is_integer(const Rational& q);

} // namespace legdet
