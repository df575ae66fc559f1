#pragma once

#include "legdet/numtheory.hpp"
#include "legdet/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace legdet {

/// Element of Q(zeta_p) in the power basis 1, zeta, ..., zeta^{p-2},
/// canonical after reduction by Phi_p. Stored as an integer coefficient
/// vector over a single positive denominator with content gcd 1, which
/// keeps the hot convolution loop in integer arithmetic; coeff(i) exposes
/// the usual rational coordinates.
class CycloElem {
public:
    explicit CycloElem(const OddPrime& p); // zero
    CycloElem(const OddPrime& p, const Rational& q);

    /// zeta^k for any integer k (reduced mod p; zeta^{p-1} folds to
    /// -1 - zeta - ... - zeta^{p-2}).
    static CycloElem zeta_pow(const OddPrime& p, long long k);

    std::uint64_t p() const { return p_; }
    bool is_zero() const;
    bool is_rational() const;
    Rational coeff(std::size_t i) const { return Rational(num_[i], den_); }

    CycloElem operator+(const CycloElem& o) const;
    CycloElem operator-(const CycloElem& o) const;
    CycloElem operator-() const;
    CycloElem operator*(const CycloElem& o) const;
    CycloElem operator*(const Rational& q) const;
    bool operator==(const CycloElem& o) const;
    bool operator!=(const CycloElem& o) const { return !(*this == o); }

    std::string str() const; // "1/5 - 2/5*zeta + zeta^3"

private:
    void normalize();
    void check_same_field(const CycloElem& o) const;

    std::uint64_t p_;
    std::vector<Integer> num_; // size p-1
    Integer den_;              // > 0

    friend CycloElem cyc_inv(const CycloElem& e);
};

/// Spec-facing alias for the ring product.
CycloElem cyc_mul(const CycloElem& a, const CycloElem& b);

/// Multiplicative inverse by extended Euclid against Phi_p over Q.
/// Throws std::domain_error on zero input.
CycloElem cyc_inv(const CycloElem& e);

/// g = sum_k (k/p) zeta^k, the canonical square root of p (g^2 = p) for
/// p == 1 (mod 4).
CycloElem gauss_sum(const OddPrime& p);

/// Square matrix over Q(zeta_p), order (p+1)/2 in the Vsemirnov setting.
class CycloMatrix {
public:
    CycloMatrix(const OddPrime& p, std::size_t size);

    std::size_t size() const { return size_; }
    CycloElem& operator()(std::size_t i, std::size_t j) { return e_[i * size_ + j]; }
    const CycloElem& operator()(std::size_t i, std::size_t j) const { return e_[i * size_ + j]; }
    CycloMatrix transpose() const;
    bool operator==(const CycloMatrix& o) const;

private:
    std::size_t size_;
    std::vector<CycloElem> e_;
};

/// Matrix product with the OpenMP kernel over output entries.
CycloMatrix cyc_matmul(const CycloMatrix& a, const CycloMatrix& b);
/// Serial reference implementation.
CycloMatrix cyc_matmul_serial(const CycloMatrix& a, const CycloMatrix& b);

/// Exact determinant over Q(zeta_p) by Gaussian elimination with
/// cyc_inv pivots.
CycloElem cyc_det(const CycloMatrix& m);

struct VsemirnovMatrices {
    CycloMatrix D, U, Ut, V;
    CycloElem lambda;
};

/// Vsemirnov's D, U, V of order (p+1)/2, plus Ut (U with left-top entry
/// (2/p) sqrt(p) x) and lambda = (2/p) sqrt(p) zeta^{(p-1)/4}, with
/// sqrt(p) realized as the Gauss sum. Entry denominators are checked
/// nonzero during the build.
VsemirnovMatrices vsemirnov_matrices(const OddPrime& p, const Rational& x);

struct DecompositionCheck {
    std::string label; // "base" or "x=<value>"
    bool passed;
    std::string mismatch; // first differing entry when failed
};

struct DecompositionReport {
    std::uint64_t p;
    std::vector<DecompositionCheck> checks;
    bool passed;
};

/// Checks the x-free base identity [((j-i)/p)] = lambda V D U D V and, for
/// each x in xs, the entrywise equality C(x) = lambda V D Ut(x) D V.
DecompositionReport verify_decomposition(const OddPrime& p, const std::vector<Rational>& xs);

struct ProductIdentityReport {
    std::uint64_t p;
    int failed_index; // 0 when all five sub-identities hold
    std::string detail;
    bool passed() const { return failed_index == 0; }
};

/// The five product identities tying the Vsemirnov data to the quadratic
/// field constants: the two signed square products against
/// b' p +- a' sqrt(p), d00^2 = p^{-1} zeta^{-(p-1)/4}, the normalized
/// square product, and the closing constant combination
/// zeta^{(p-1)^2/8} p^{(p+3)/4} (det V)^2 (det D)^2 f1^2 f2^{-2} = 1.
ProductIdentityReport verify_product_identities(const OddPrime& p);

} // namespace legdet
