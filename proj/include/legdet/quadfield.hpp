#pragma once

#include "legdet/numtheory.hpp"
#include "legdet/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace legdet {

/// Element a + b*sqrt(p) of Q(sqrt(p)), exact coordinates.
struct QuadElem {
    Rational a;
    Rational b;
    std::uint64_t p;

    QuadElem(Rational a_, Rational b_, const OddPrime& prime)
        : a(std::move(a_)), b(std::move(b_)), p(prime.value()) {}

    QuadElem operator*(const QuadElem& o) const;
    QuadElem pow(unsigned long e) const;
    Rational norm() const { return a * a - Rational(static_cast<long>(p)) * b * b; }
    bool operator==(const QuadElem& o) const { return p == o.p && a == o.a && b == o.b; }

    std::string str() const; // "a+b*sqrt(p)"
};

/// Binary quadratic form a x^2 + b x y + c y^2 of discriminant
/// b^2 - 4ac. For prime discriminants primitivity is automatic.
struct QuadForm {
    long a, b, c;
    long discriminant() const { return b * b - 4 * a * c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

/// All reduced indefinite forms of discriminant p (p ≡ 1 mod 4), i.e.
/// |sqrt(p) - 2|a|| < b < sqrt(p), sorted.
std::vector<QuadForm> reduced_forms_real(const OddPrime& p);

/// All reduced positive-definite forms of discriminant -p (p ≡ 3 mod 4,
/// p > 3): -a < b <= a <= c with b >= 0 when a = c or |b| = a. Their count
/// is h(-p).
std::vector<QuadForm> reduced_forms_imag(const OddPrime& p);

/// Fundamental unit of the maximal order Z[(1+sqrt(p))/2], p ≡ 1 (mod 4),
/// read off the periodic continued fraction of (1+sqrt(p))/2. Asserts
/// norm = -1 (classical for prime p ≡ 1 mod 4) and throws std::logic_error
/// if that ever fails.
QuadElem fundamental_unit(const OddPrime& p);

/// Class number h_p of Q(sqrt(p)), p ≡ 1 (mod 4): cycles of reduced
/// indefinite binary quadratic forms of discriminant p. Equals the wide
/// class number because norm(eps_p) = -1.
long class_number_real(const OddPrime& p);

/// Class number h(-p) of Q(sqrt(-p)), p ≡ 3 (mod 4), p > 3. Counted two
/// ways (reduced positive-definite forms; Dirichlet character sum) which
/// must agree, else std::logic_error.
long class_number_imag(const OddPrime& p);

enum class UnitPower { plain, primed };

/// Coordinates (a, b) of eps_p^h (plain) or eps_p^{(2 - (2/p)) h} (primed)
/// in the basis (1, sqrt(p)). Postcondition a^2 - p b^2 = -1, a > 0, b > 0.
std::pair<Rational, Rational> unit_power_coeffs(const OddPrime& p, UnitPower variant);

} // namespace legdet
