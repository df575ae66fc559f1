#pragma once

#include "legdet/matrix.hpp"

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace legdet {

// Variable masks over the fixed alphabet x < y < z < w.
inline constexpr unsigned VX = 1u, VY = 2u, VZ = 4u, VW = 8u;

/// Values for (x, y, z, w); variables outside a family's set are ignored.
using Assignment = std::array<Rational, 4>;

struct MultilinearityError : std::runtime_error {
    MultilinearityError(const Rational& poly_value, const Rational& det_value);
    Rational poly_value;
    Rational det_value;
};

/// Polynomial of degree <= 1 in each variable of a subset of {x, y, z, w},
/// with rational coefficients keyed by monomial (a sub-mask of the variable
/// set). Zero coefficients are not stored. Canonical term order: monomials
/// by size, then lexicographically with x < y < z < w.
class MultilinearPoly {
public:
    explicit MultilinearPoly(unsigned vars_mask = 0) : vars_(vars_mask) {}

    static MultilinearPoly constant(const Rational& c);

    unsigned vars_mask() const { return vars_; }

    void set_coeff(unsigned mono, const Rational& c);
    Rational coeff(unsigned mono) const;

    Rational evaluate(const Assignment& a) const;

    /// True when every nonzero coefficient agrees; the declared variable
    /// sets may differ (a poly in {x} equals the same poly in {x,y,z,w}).
    bool operator==(const MultilinearPoly& o) const { return coef_ == o.coef_; }

    /// Canonical text rendering, e.g. "-5 - 18*x - 5*y - 5*z + 5*x*w - 5*y*z".
    std::string str() const;

    const std::map<unsigned, Rational>& terms() const { return coef_; }

    /// First monomial whose coefficients differ, for failure reports.
    static std::string first_mismatch(const MultilinearPoly& computed,
                                      const MultilinearPoly& expected);

    static std::string mono_str(unsigned mono); // "1" for the empty monomial

private:
    unsigned vars_;
    std::map<unsigned, Rational> coef_;
};

/// Extracts det(builder(assignment)) as a multilinear polynomial in the
/// variables of `vars_mask` by evaluating at all 0/1 assignments and
/// Moebius-inverting over the subset lattice. Requires each variable to
/// enter the matrix through a rank-1 additive term, so the determinant is
/// affine in it; this is verified a posteriori by re-evaluating at the
/// all-variables-equal-2 point, and a mismatch throws MultilinearityError.
MultilinearPoly det_multilinear(const std::function<RatMatrix(const Assignment&)>& builder,
                                unsigned vars_mask);

} // namespace legdet
