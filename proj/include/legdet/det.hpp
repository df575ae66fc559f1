#pragma once

#include "legdet/matrix.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace legdet {

struct SingularInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact determinant. Clears denominators row by row, then runs
/// fraction-free Bareiss elimination on the integer matrix; zero pivots are
/// handled by row interchange with sign tracking. The 0x0 determinant is 1.
/// Inner row updates run under OpenMP once the active block is large enough.
Rational det(const RatMatrix& m);

/// Same algorithm, no OpenMP. Reference implementation kept for tests and
/// the benchmark target.
Rational det_serial(const RatMatrix& m);

/// Adjugate via cofactors: adj(M)(i,j) = (-1)^{i+j} det(minor(j, i)).
/// Satisfies M * adj(M) = adj(M) * M = det(M) * I, including singular M.
/// Intended for the moderate sizes the lemma checks use.
RatMatrix adjugate(const RatMatrix& m);

/// Matrix-determinant lemma evaluation: det(H) + v^T adj(H) u, which equals
/// det(H + u v^T).
Rational det_rank1_update(const RatMatrix& h, const std::vector<Rational>& u,
                          const std::vector<Rational>& v);

/// Cauchy-type identity, both sides computed independently:
///   lhs = det[(x_i + y_j) / (1 + x_i y_j)]
///   rhs = 1/2 (prod (1+x_i)(1+y_i) + (-1)^m prod (1-x_i)(1-y_i))
///         * prod_{i<j} (x_i - x_j)(y_j - y_i) * prod_{i,j} (1 + x_i y_j)^{-1}
/// Throws SingularInputError when some 1 + x_i y_j = 0.
std::pair<Rational, Rational> cauchy_type_det(const std::vector<Rational>& xs,
                                              const std::vector<Rational>& ys);

/// Exact solve of M c = rhs by rational Gaussian elimination.
/// Throws SingularInputError when M is singular.
std::vector<Rational> solve_linear(const RatMatrix& m, const std::vector<Rational>& rhs);

} // namespace legdet
