#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "legdet/det.hpp"

#include "test_util.hpp"

using namespace legdet;
using namespace legdet::testutil;

namespace {

RatMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

} // namespace

TEST_CASE("det of small closed-form cases") {
    CHECK(det(RatMatrix::identity(3)) == 1);
    CHECK(det(from_rows({{1, 2}, {3, 4}})) == -2);
    CHECK(det(RatMatrix(0, 0)) == 1); // empty product convention
    CHECK(det(from_rows({{7}})) == 7);
    CHECK_THROWS_AS(det(RatMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("det of the 3x3 Hilbert matrix") {
    RatMatrix h(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            h(i, j) = Rational(1, static_cast<long>(i + j + 1));
    Rational expected(1, 2160);
    CHECK(det_laplace(h) == expected); // oracle agrees with the frozen value
    CHECK(det(h) == expected);
}

TEST_CASE("odd-order skew-symmetric determinants vanish") {
    Rng rng(101);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + 2 * (iter % 4); // 1, 3, 5, 7
        CHECK(det(random_skew(rng, n)) == 0);
    }
}

TEST_CASE("Bareiss agrees with Laplace expansion") {
    Rng rng(202);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 5;
        RatMatrix m = random_matrix(rng, n);
        CHECK(det(m) == det_laplace(m));
    }
}

TEST_CASE("parallel and serial kernels agree on larger matrices") {
    Rng rng(303);
    for (std::size_t n : {20, 33, 40}) {
        RatMatrix m = random_matrix(rng, n, 20, 7);
        CHECK(det(m) == det_serial(m));
    }
}

TEST_CASE("det handles zero pivots by row interchange") {
    RatMatrix m = from_rows({{0, 1, 2}, {1, 0, 3}, {4, 5, 0}});
    CHECK(det(m) == det_laplace(m));
    // singular with a zero leading column block
    RatMatrix s = from_rows({{0, 0, 1}, {0, 0, 2}, {1, 2, 3}});
    CHECK(det(s) == 0);
}

TEST_CASE("adjugate closed forms") {
    CHECK(adjugate(RatMatrix::identity(3)) == RatMatrix::identity(3));
    RatMatrix c(1, 1);
    c(0, 0) = Rational(-7, 3);
    CHECK(adjugate(c) == RatMatrix::identity(1));
    CHECK(adjugate(from_rows({{1, 2}, {3, 4}})) == from_rows({{4, -2}, {-3, 1}}));
}

TEST_CASE("adjugate identity holds, including singular matrices") {
    Rng rng(404);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 5;
        RatMatrix m = random_matrix(rng, n);
        if (iter % 3 == 0 && n >= 2) // force singularity: duplicate a row
            for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j);
        Rational d = det(m);
        RatMatrix expect(n, n);
        for (std::size_t i = 0; i < n; ++i) expect(i, i) = d;
        RatMatrix adj = adjugate(m);
        CHECK(m * adj == expect);
        CHECK(adj * m == expect);
    }
}

TEST_CASE("matrix-determinant lemma evaluation") {
    std::vector<Rational> e0{1, 0}, ones{1, 1}, alt{1, -1};
    CHECK(det_rank1_update(RatMatrix::identity(2), e0, e0) == 2);
    RatMatrix zero(2, 2);
    CHECK(det_rank1_update(zero, ones, alt) == 0);
    CHECK(det_rank1_update(from_rows({{1, 2}, {3, 4}}), ones, alt) == 2);
    CHECK_THROWS_AS(det_rank1_update(RatMatrix::identity(2), {1}, {1, 2}),
                    std::invalid_argument);
}

TEST_CASE("matrix-determinant lemma property") {
    Rng rng(505);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 1 + iter % 6;
        RatMatrix h = random_matrix(rng, n);
        std::vector<Rational> u(n), v(n);
        for (auto& q : u) q = random_rational(rng);
        for (auto& q : v) q = random_rational(rng);
        RatMatrix updated = h;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                updated(i, j) += u[i] * v[j];
        CHECK(det_rank1_update(h, u, v) == det(updated));
    }
}

TEST_CASE("bordered-difference identity for det[x + a_ij]") {
    // det[x + a] - det[a] = x det[a_ij - a_i0 - a_0j + a_00], 1 <= i,j <= m
    Rng rng(606);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t m = 1 + iter % 4;
        RatMatrix a = random_matrix(rng, m + 1);
        Rational x = random_rational(rng);
        RatMatrix ax = a;
        for (std::size_t i = 0; i <= m; ++i)
            for (std::size_t j = 0; j <= m; ++j)
                ax(i, j) += x;
        RatMatrix b(m, m);
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = 1; j <= m; ++j)
                b(i - 1, j - 1) = a(i, j) - a(i, 0) - a(0, j) + a(0, 0);
        CHECK(det(ax) - det(a) == x * det(b));
    }
}

TEST_CASE("cauchy-type determinant identity") {
    auto [l0, r0] = cauchy_type_det({Rational(0)}, {Rational(0)});
    CHECK(l0 == 0);
    CHECK(r0 == 0);
    auto [l1, r1] = cauchy_type_det({Rational(2)}, {Rational(3)});
    CHECK(l1 == Rational(5, 7));
    CHECK(r1 == Rational(5, 7));
    auto [le, re] = cauchy_type_det({}, {});
    CHECK(le == 1);
    CHECK(re == 1);
    CHECK_THROWS_AS(cauchy_type_det({Rational(1)}, {Rational(-1)}), SingularInputError);

    Rng rng(707);
    int done = 0;
    while (done < 200) {
        std::size_t m = 1 + done % 6;
        std::vector<Rational> xs, ys;
        auto distinct_push = [&](std::vector<Rational>& v) {
            Rational q = random_rational(rng, 12, 5);
            for (const auto& o : v)
                if (o == q) return false;
            v.push_back(q);
            return true;
        };
        bool ok = true;
        while (xs.size() < m && ok) ok = distinct_push(xs);
        while (ys.size() < m && ok) ok = distinct_push(ys);
        if (!ok) continue;
        bool singular = false;
        for (const auto& x : xs)
            for (const auto& y : ys)
                if (1 + x * y == 0) singular = true;
        if (singular) continue;
        auto [lhs, rhs] = cauchy_type_det(xs, ys);
        CHECK(lhs == rhs);
        ++done;
    }
}

TEST_CASE("solve_linear solves exactly and reports singularity") {
    Rng rng(808);
    for (int iter = 0; iter < 50; ++iter) {
        std::size_t n = 1 + iter % 5;
        RatMatrix m = random_matrix(rng, n);
        if (det(m) == 0) continue;
        std::vector<Rational> x(n);
        for (auto& q : x) q = random_rational(rng);
        std::vector<Rational> rhs(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rhs[i] += m(i, j) * x[j];
        CHECK(solve_linear(m, rhs) == x);
    }
    RatMatrix sing(2, 2);
    sing(0, 0) = 1;
    sing(0, 1) = 2;
    sing(1, 0) = 2;
    sing(1, 1) = 4;
    CHECK_THROWS_AS(solve_linear(sing, {Rational(1), Rational(1)}), SingularInputError);
}
