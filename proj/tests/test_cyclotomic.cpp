#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "legdet/cyclotomic.hpp"

#include "legdet/det.hpp"
#include "legdet/multilinear.hpp"
#include "legdet/quadfield.hpp"

#include <random>

using namespace legdet;

namespace {

CycloElem random_elem(std::mt19937_64& rng, const OddPrime& p) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 4);
    CycloElem e(p);
    for (std::uint64_t i = 0; i < p.value() - 1; ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        e = e + CycloElem::zeta_pow(p, static_cast<long long>(i)) * q;
    }
    return e;
}

} // namespace

TEST_CASE("zeta powers reduce through Phi_p") {
    OddPrime p(7);
    CycloElem z = CycloElem::zeta_pow(p, 1);
    CycloElem z6 = CycloElem::zeta_pow(p, 6); // -1 - zeta - ... - zeta^5
    CHECK(z * CycloElem::zeta_pow(p, 5) == z6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(z6.coeff(i) == -1);
    CHECK(z * z6 == CycloElem(p, Rational(1))); // zeta^7 = 1

    // sum of all p-th roots of unity vanishes
    CycloElem sum(p);
    for (long long k = 0; k < 7; ++k) sum = sum + CycloElem::zeta_pow(p, k);
    CHECK(sum.is_zero());
}

TEST_CASE("multiplicative identity and Phi_5(1) product") {
    OddPrime p(5);
    CycloElem e = CycloElem::zeta_pow(p, 3) * Rational(7, 2) - CycloElem(p, Rational(1, 3));
    CHECK(e * CycloElem(p, Rational(1)) == e);

    CycloElem prod(p, Rational(1));
    for (long long k = 1; k <= 4; ++k)
        prod = prod * (CycloElem(p, Rational(1)) - CycloElem::zeta_pow(p, k));
    CHECK(prod == CycloElem(p, Rational(5)));
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(11);
    for (std::uint64_t pv : {5ULL, 13ULL}) {
        OddPrime p(pv);
        for (int iter = 0; iter < 40; ++iter) {
            CycloElem a = random_elem(rng, p), b = random_elem(rng, p), c = random_elem(rng, p);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + (b + c) == (a + b) + c);
        }
    }
}

TEST_CASE("mixed fields are rejected") {
    CycloElem a(OddPrime(5), Rational(1));
    CycloElem b(OddPrime(13), Rational(1));
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("cyc_inv closed forms") {
    OddPrime p(5);
    CHECK(cyc_inv(CycloElem::zeta_pow(p, 1)) == CycloElem::zeta_pow(p, 4));
    CHECK(cyc_inv(CycloElem(p, Rational(2))) == CycloElem(p, Rational(1, 2)));

    // 1/(1 - zeta) = (1 - zeta^2)(1 - zeta^3)(1 - zeta^4)/5
    CycloElem one(p, Rational(1));
    CycloElem target = (one - CycloElem::zeta_pow(p, 2)) * (one - CycloElem::zeta_pow(p, 3)) *
                       (one - CycloElem::zeta_pow(p, 4)) * Rational(1, 5);
    CHECK(cyc_inv(one - CycloElem::zeta_pow(p, 1)) == target);

    CHECK_THROWS_AS(cyc_inv(CycloElem(p)), std::domain_error);
}

TEST_CASE("cyc_inv is a two-sided inverse on random nonzero elements") {
    std::mt19937_64 rng(22);
    for (std::uint64_t pv : {5ULL, 13ULL}) {
        OddPrime p(pv);
        CycloElem one(p, Rational(1));
        int done = 0;
        while (done < 200) {
            CycloElem e = random_elem(rng, p);
            if (e.is_zero()) continue;
            CycloElem inv = cyc_inv(e);
            CHECK(e * inv == one);
            CHECK(inv * e == one);
            ++done;
        }
    }
}

TEST_CASE("gauss sum squares to p") {
    for (const OddPrime& p : primes_in(5, 101, 1)) {
        CycloElem g = gauss_sum(p);
        CHECK(g * g == CycloElem(p, Rational(static_cast<long>(p.value()))));
    }
    OddPrime p5(5);
    CycloElem g5 = gauss_sum(p5);
    CycloElem expect = CycloElem::zeta_pow(p5, 1) - CycloElem::zeta_pow(p5, 2) -
                       CycloElem::zeta_pow(p5, 3) + CycloElem::zeta_pow(p5, 4);
    CHECK(g5 == expect);
    CHECK_THROWS_AS(gauss_sum(OddPrime(7)), std::invalid_argument);
}

TEST_CASE("vsemirnov matrix entries") {
    OddPrime p(13);
    VsemirnovMatrices vs = vsemirnov_matrices(p, Rational(0));
    CHECK(vs.U(0, 0).is_zero());
    for (long long j = 1; j <= 6; ++j) {
        CycloElem expect = CycloElem::zeta_pow(p, -j) * Rational(legendre(j, p));
        CHECK(vs.U(0, j) == expect);
    }
    // lambda at p = 5 is -g zeta since (2/5) = -1 and (p-1)/4 = 1
    OddPrime p5(5);
    VsemirnovMatrices vs5 = vsemirnov_matrices(p5, Rational(0));
    CycloElem expect_lambda = -(gauss_sum(p5) * CycloElem::zeta_pow(p5, 1));
    CHECK(vs5.lambda == expect_lambda);
    // Ut differs from U only at the top-left entry
    VsemirnovMatrices vsx = vsemirnov_matrices(p5, Rational(-3, 2));
    CHECK(vsx.Ut(0, 0) == gauss_sum(p5) * Rational(3, 2)); // (2/5) = -1 times -3/2
    CHECK(vsx.Ut(1, 1) == vsx.U(1, 1));
}

TEST_CASE("serial and parallel cyclotomic matmul agree") {
    OddPrime p(13);
    VsemirnovMatrices vs = vsemirnov_matrices(p, Rational(1));
    CycloMatrix a = cyc_matmul(vs.U, vs.V);
    CycloMatrix b = cyc_matmul_serial(vs.U, vs.V);
    CHECK(a == b);
}

TEST_CASE("cyc_det matches the Vandermonde product for V") {
    for (std::uint64_t pv : {5ULL, 13ULL, 17ULL}) {
        OddPrime p(pv);
        VsemirnovMatrices vs = vsemirnov_matrices(p, Rational(0));
        CycloElem expect(p, Rational(1));
        long long n = static_cast<long long>(p.half());
        for (long long i = 0; i <= n; ++i)
            for (long long j = i + 1; j <= n; ++j)
                expect = expect *
                         (CycloElem::zeta_pow(p, 2 * j) - CycloElem::zeta_pow(p, 2 * i));
        CHECK(cyc_det(vs.V) == expect);
    }
}

TEST_CASE("decomposition of C(x) for sample primes and x values") {
    DecompositionReport r5 = verify_decomposition(OddPrime(5), {Rational(0)});
    CHECK(r5.passed);
    REQUIRE(r5.checks.size() == 2); // base + one x
    CHECK(r5.checks[0].label == "base");
    CHECK(r5.checks[0].passed);
    CHECK(r5.checks[1].label == "x=0");

    CHECK(verify_decomposition(OddPrime(13), {Rational(1)}).passed);
    CHECK(verify_decomposition(OddPrime(17), {Rational(-3, 2)}).passed);
    CHECK_THROWS_AS(verify_decomposition(OddPrime(7), {Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(verify_decomposition(OddPrime(5), {}), std::invalid_argument);
}

TEST_CASE("product identities for p = 5 and p = 13") {
    ProductIdentityReport r5 = verify_product_identities(OddPrime(5));
    CHECK(r5.passed());
    ProductIdentityReport r13 = verify_product_identities(OddPrime(13));
    CHECK(r13.passed());
}

TEST_CASE("spot values inside the product identities at p = 5") {
    OddPrime p(5);
    CycloElem g = gauss_sum(p);
    // (1): the right-hand side is -zeta^{-3} (5 + 2g)
    CycloElem prod(p, Rational(1));
    for (long long j = 1; j <= 2; ++j)
        prod = prod * (CycloElem(p, Rational(1)) +
                       CycloElem::zeta_pow(p, -j) * Rational(legendre(j, p)));
    prod = prod * prod;
    CycloElem rhs = CycloElem::zeta_pow(p, -3) * (CycloElem(p, Rational(5)) + g * Rational(2));
    CHECK(prod == -rhs);

    // (3): d00^2 = 5^{-1} zeta^{-1}
    CycloElem d00prod(p, Rational(1));
    for (long long k = 1; k <= 2; ++k)
        d00prod = d00prod * (CycloElem(p, Rational(1)) - CycloElem::zeta_pow(p, 2 * k));
    CycloElem d00 = cyc_inv(d00prod);
    CHECK(d00 * d00 == CycloElem::zeta_pow(p, -1) * Rational(1, 5));
}

TEST_CASE("cofactor of C(x) ties back to det R(x) over the rationals") {
    for (std::uint64_t pv : {5ULL, 13ULL, 17ULL}) {
        OddPrime p(pv);
        long long n = static_cast<long long>(p.half());
        auto builder = [&](const Assignment& a) {
            RatMatrix m(n, n);
            for (long long i = 1; i <= n; ++i)
                for (long long j = 1; j <= n; ++j)
                    m(i - 1, j - 1) = a[0] + legendre(j - i, p);
            return m;
        };
        MultilinearPoly detr = det_multilinear(builder, VX);
        auto [ap, bp] = unit_power_coeffs(p, UnitPower::primed);
        CHECK(detr.coeff(0) == Rational(legendre(2, p)) * bp);
        CHECK(detr.coeff(VX) == -ap);
    }
}
