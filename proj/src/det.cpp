#include "legdet/det.hpp"

#include <cstddef>

namespace legdet {

namespace {

// Active block must be at least this wide before row updates go parallel.
constexpr std::size_t kParallelCutoff = 16;

RatMatrix minor_of(const RatMatrix& m, std::size_t row, std::size_t col) {
    RatMatrix out(m.rows() - 1, m.cols() - 1);
    for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
        if (i == row) continue;
        for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
            if (j == col) continue;
            out(oi, oj) = m(i, j);
            ++oj;
        }
        ++oi;
    }
    return out;
}

// Scales each row to integers; returns the product of the scale factors.
// det(original) = det(integer matrix) / scale.
Integer clear_denominators(const RatMatrix& m, std::vector<Integer>& out) {
    const std::size_t n = m.rows();
    out.assign(n * n, Integer(0));
    Integer scale = 1;
    Integer row_lcm, t;
    for (std::size_t i = 0; i < n; ++i) {
        row_lcm = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            mpz_divexact(t.get_mpz_t(), row_lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
            out[i * n + j] = t * m(i, j).get_num();
        }
        scale *= row_lcm;
    }
    return scale;
}

// Fraction-free Bareiss elimination on an integer matrix. Returns the
// determinant; `parallel` toggles the OpenMP row-update kernel.
Integer bareiss(std::vector<Integer>& a, std::size_t n, bool parallel) {
    if (n == 0) return Integer(1);
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r * n + k] == 0) ++r;
            if (r == n) return Integer(0);
            for (std::size_t j = k; j < n; ++j)
                std::swap(a[k * n + j], a[r * n + j]);
            sign = -sign;
        }
        const Integer& pivot = a[k * n + k];
        const bool par = parallel && (n - k) >= kParallelCutoff;
#pragma omp parallel if (par)
        {
            Integer t; // per-thread scratch keeps the hot loop allocation-free
#pragma omp for schedule(static)
            for (std::size_t i = k + 1; i < n; ++i) {
                const Integer& lead = a[i * n + k];
                for (std::size_t j = k + 1; j < n; ++j) {
                    mpz_mul(t.get_mpz_t(), pivot.get_mpz_t(), a[i * n + j].get_mpz_t());
                    mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), a[k * n + j].get_mpz_t());
                    mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                a[i * n + k] = 0;
            }
        }
        prev = pivot;
    }
    Integer d = a[n * n - 1];
    if (sign < 0) d = -d;
    return d;
}

Rational det_impl(const RatMatrix& m, bool parallel) {
    if (!m.square())
        throw std::invalid_argument("det: matrix is not square");
    std::vector<Integer> a;
    Integer scale = clear_denominators(m, a);
    Integer d = bareiss(a, m.rows(), parallel);
    Rational r(d, scale);
    r.canonicalize();
    return r;
}

} // namespace

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("RatMatrix: dimension mismatch in product");
    RatMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                out(i, j) += a * o(k, j);
        }
    return out;
}

Rational det(const RatMatrix& m) { return det_impl(m, true); }
Rational det_serial(const RatMatrix& m) { return det_impl(m, false); }

RatMatrix adjugate(const RatMatrix& m) {
    if (!m.square() || m.rows() == 0)
        throw std::invalid_argument("adjugate: requires a square matrix of size >= 1");
    const std::size_t n = m.rows();
    RatMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1; // sole cofactor is the empty determinant
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational c = det(minor_of(m, j, i));
            adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

Rational det_rank1_update(const RatMatrix& h, const std::vector<Rational>& u,
                          const std::vector<Rational>& v) {
    if (!h.square())
        throw std::invalid_argument("det_rank1_update: H must be square");
    const std::size_t n = h.rows();
    if (u.size() != n || v.size() != n)
        throw std::invalid_argument("det_rank1_update: vector length mismatch");
    if (n == 0) return Rational(1);
    RatMatrix adj = adjugate(h);
    Rational acc = det(h);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            acc += v[i] * adj(i, j) * u[j];
    return acc;
}

std::pair<Rational, Rational> cauchy_type_det(const std::vector<Rational>& xs,
                                              const std::vector<Rational>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("cauchy_type_det: xs and ys must have the same length");
    const std::size_t m = xs.size();

    RatMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Rational den = 1 + xs[i] * ys[j];
            if (den == 0)
                throw SingularInputError("cauchy_type_det: 1 + x_i*y_j vanishes");
            a(i, j) = (xs[i] + ys[j]) / den;
        }
    Rational lhs = det(a);

    Rational plus = 1, minus = 1;
    for (std::size_t i = 0; i < m; ++i) {
        plus *= (1 + xs[i]) * (1 + ys[i]);
        minus *= (1 - xs[i]) * (1 - ys[i]);
    }
    Rational rhs = (m % 2 == 0) ? Rational(plus + minus) : Rational(plus - minus);
    rhs /= 2;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            rhs *= (xs[i] - xs[j]) * (ys[j] - ys[i]);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            rhs /= 1 + xs[i] * ys[j];
    return {lhs, rhs};
}

std::vector<Rational> solve_linear(const RatMatrix& m, const std::vector<Rational>& rhs) {
    if (!m.square() || m.rows() != rhs.size())
        throw std::invalid_argument("solve_linear: shape mismatch");
    const std::size_t n = m.rows();
    RatMatrix a = m;
    std::vector<Rational> b = rhs;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && a(r, k) == 0) ++r;
        if (r == n) throw SingularInputError("solve_linear: singular system");
        if (r != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(r, j));
            std::swap(b[k], b[r]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

} // namespace legdet
