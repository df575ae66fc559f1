#include "legdet/identities.hpp"

#include "legdet/det.hpp"
#include "legdet/quadfield.hpp"

#include <algorithm>
#include <chrono>

namespace legdet {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

Rational two_power_half(const OddPrime& p) {
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, static_cast<unsigned long>(p.half()));
    return Rational(t);
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::MAIN: return "main";
        case Family::SIMPLE: return "simple";
        case Family::EVIL: return "evil";
        case Family::MP: return "mp";
        case Family::ONEPLUS: return "oneplus";
        case Family::CHAPMAN: return "chapman";
    }
    return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
    for (Family f : kAllFamilies)
        if (family_name(f) == name) return f;
    return std::nullopt;
}

unsigned family_vars(Family f) {
    switch (f) {
        case Family::MAIN: return VX | VY | VZ | VW;
        case Family::SIMPLE:
        case Family::CHAPMAN: return VX;
        default: return 0;
    }
}

RatMatrix build(Family f, const OddPrime& p, const Assignment& a) {
    const long long n = static_cast<long long>(p.half());
    const Rational &x = a[0], &y = a[1], &z = a[2], &w = a[3];
    switch (f) {
        case Family::MAIN: {
            RatMatrix m(n, n); // indices 0..(p-3)/2
            for (long long i = 0; i < n; ++i)
                for (long long j = 0; j < n; ++j) {
                    Rational e = x + legendre(i - j, p);
                    if (legendre(i, p) != 0) e += Rational(legendre(i, p)) * y;
                    if (legendre(j, p) != 0) e += Rational(legendre(j, p)) * z;
                    if (legendre(i * j, p) != 0) e += Rational(legendre(i * j, p)) * w;
                    m(i, j) = e;
                }
            return m;
        }
        case Family::SIMPLE: {
            RatMatrix m(n, n); // indices 1..(p-1)/2
            for (long long i = 1; i <= n; ++i)
                for (long long j = 1; j <= n; ++j)
                    m(i - 1, j - 1) = x + legendre(i - j, p);
            return m;
        }
        case Family::EVIL:
        case Family::MP: {
            RatMatrix m(n + 1, n + 1); // indices 0..(p-1)/2
            for (long long i = 0; i <= n; ++i)
                for (long long j = 0; j <= n; ++j)
                    m(i, j) = (f == Family::MP && i == 0) ? Rational(1)
                                                          : Rational(legendre(i - j, p));
            return m;
        }
        case Family::ONEPLUS: {
            RatMatrix m(n, n);
            for (long long i = 1; i <= n; ++i)
                for (long long j = 1; j <= n; ++j)
                    m(i - 1, j - 1) = 1 + legendre(j - i, p);
            return m;
        }
        case Family::CHAPMAN: {
            RatMatrix m(n + 1, n + 1); // indices 1..(p+1)/2
            for (long long i = 1; i <= n + 1; ++i)
                for (long long j = 1; j <= n + 1; ++j)
                    m(i - 1, j - 1) = x + legendre(i + j - 1, p);
            return m;
        }
    }
    throw std::logic_error("build: unknown family");
}

MultilinearPoly closed_form(Family f, const OddPrime& p) {
    const bool one_mod4 = p.residue_class() == 1;
    switch (f) {
        case Family::MAIN: {
            MultilinearPoly poly(VX | VY | VZ | VW);
            if (!one_mod4) {
                poly.set_coeff(VX, 1);
                return poly;
            }
            auto [ap, bp] = unit_power_coeffs(p, UnitPower::primed);
            Rational b2 = Rational(legendre(2, p)) * bp;
            for (unsigned mono : {0u, VY, VZ, VY | VZ}) poly.set_coeff(mono, b2);
            poly.set_coeff(VX | VW, -b2);
            poly.set_coeff(VX, -ap);
            return poly;
        }
        case Family::SIMPLE: {
            MultilinearPoly poly(VX);
            if (!one_mod4) {
                poly.set_coeff(VX, 1);
                return poly;
            }
            auto [ap, bp] = unit_power_coeffs(p, UnitPower::primed);
            poly.set_coeff(0, Rational(legendre(2, p)) * bp);
            poly.set_coeff(VX, -ap);
            return poly;
        }
        case Family::EVIL: {
            if (!one_mod4) return MultilinearPoly::constant(1);
            auto [ap, bp] = unit_power_coeffs(p, UnitPower::primed);
            return MultilinearPoly::constant(-ap);
        }
        case Family::MP: {
            if (one_mod4) {
                int s = (p.value() - 1) / 4 % 2 == 0 ? 1 : -1;
                return MultilinearPoly::constant(s);
            }
            if (p.value() == 3)
                throw FamilySkip("mp closed form needs p > 3 for p == 3 (mod 4)");
            long h = class_number_imag(p);
            int s = (h - 1) / 2 % 2 == 0 ? 1 : -1;
            return MultilinearPoly::constant(s);
        }
        case Family::ONEPLUS: {
            if (one_mod4)
                throw FamilySkip("oneplus closed form is stated for p == 3 (mod 4)");
            return MultilinearPoly::constant(1);
        }
        case Family::CHAPMAN: {
            MultilinearPoly poly(VX);
            if (!one_mod4) {
                if (p.value() == 3)
                    throw FamilySkip("chapman closed form needs p > 3 for p == 3 (mod 4)");
                poly.set_coeff(0, two_power_half(p));
                return poly;
            }
            auto [ap, bp] = unit_power_coeffs(p, UnitPower::plain);
            Rational scale = Rational(legendre(2, p)) * two_power_half(p);
            poly.set_coeff(0, -scale * ap);
            poly.set_coeff(VX, scale * Rational(static_cast<long>(p.value())) * bp);
            return poly;
        }
    }
    throw std::logic_error("closed_form: unknown family");
}

std::string status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "?";
}

VerificationRecord verify(Family f, const OddPrime& p) {
    auto t0 = Clock::now();
    VerificationRecord rec{f, p.value(), Status::pass, MultilinearPoly(), MultilinearPoly(), 0, ""};
    try {
        rec.expected = closed_form(f, p);
    } catch (const FamilySkip& skip) {
        rec.status = Status::skipped;
        rec.detail = skip.what();
        rec.ms = ms_since(t0);
        return rec;
    }
    unsigned vars = family_vars(f);
    try {
        if (vars == 0) {
            Assignment zero{Rational(0), Rational(0), Rational(0), Rational(0)};
            rec.computed = MultilinearPoly::constant(det(build(f, p, zero)));
        } else {
            rec.computed = det_multilinear(
                [&](const Assignment& a) { return build(f, p, a); }, vars);
        }
    } catch (const MultilinearityError& err) {
        rec.status = Status::fail;
        rec.detail = err.what();
        rec.ms = ms_since(t0);
        return rec;
    }
    if (rec.computed == rec.expected) {
        rec.status = Status::pass;
    } else {
        rec.status = Status::fail;
        rec.detail = MultilinearPoly::first_mismatch(rec.computed, rec.expected);
    }
    rec.ms = ms_since(t0);
    return rec;
}

Section3Report verify_section3(const OddPrime& p) {
    if (p.residue_class() != 3 || p.value() == 3)
        throw std::invalid_argument("verify_section3: requires p == 3 (mod 4), p > 3");
    auto t0 = Clock::now();
    const long long n = static_cast<long long>(p.half());
    const std::size_t order = static_cast<std::size_t>(n + 1);
    Section3Report rep{p.value(), true, {}, "", 0};
    auto record = [&](const std::string& name, bool ok) {
        rep.checks.push_back({name, ok});
        if (!ok && rep.passed) {
            rep.passed = false;
            rep.detail = "check '" + name + "' failed";
        }
    };

    // N = [((j-i)/p)], 0 <= i,j <= (p-1)/2; det N = 1 is the evil identity
    RatMatrix N(order, order);
    for (long long i = 0; i <= n; ++i)
        for (long long j = 0; j <= n; ++j)
            N(i, j) = Rational(legendre(j - i, p));
    record("det[(j-i)/p] = 1", det(N) == 1);

    // Cramer coefficients: sum_i ((j-i)/p) c_i = 1 for every j
    std::vector<Rational> ones(order, Rational(1));
    std::vector<Rational> c = solve_linear(N.transpose(), ones);

    // A: identity rows, last row c_j
    RatMatrix A(order, order);
    for (std::size_t i = 0; i + 1 < order; ++i) A(i, i) = 1;
    for (std::size_t j = 0; j < order; ++j) A(order - 1, j) = c[j];

    // M* = reversal of M_p: rows 0..n-1 are ((j-i)/p), last row all 1
    RatMatrix Mstar(order, order);
    for (long long i = 0; i <= n; ++i)
        for (long long j = 0; j <= n; ++j)
            Mstar(i, j) = i == n ? Rational(1) : Rational(legendre(j - i, p));
    record("A N = M*", A * N == Mstar);

    long h = class_number_imag(p);
    Rational mp_value((h - 1) / 2 % 2 == 0 ? 1 : -1);
    Rational detMstar = det(Mstar);
    record("det M* = (-1)^((h(-p)-1)/2)", detMstar == mp_value);
    record("det A = det M*", det(A) == detMstar);

    // B = M* A^T has the block shape with -1 / +1 borders and corner sum(c)
    RatMatrix B = Mstar * A.transpose();
    Rational csum = 0;
    for (const Rational& ci : c) csum += ci;
    bool shape_ok = true;
    for (long long i = 0; i <= n && shape_ok; ++i)
        for (long long j = 0; j <= n; ++j) {
            Rational want;
            if (i < n && j < n)
                want = Rational(legendre(j - i, p));
            else if (i < n && j == n)
                want = -1;
            else if (i == n && j < n)
                want = 1;
            else
                want = csum;
            if (B(i, j) != want) { shape_ok = false; break; }
        }
    record("B = M* A^T block shape", shape_ok);
    Rational detB = det(B);
    record("det B = 1", detB == 1);

    RatMatrix Bstar = B;
    Bstar(order - 1, order - 1) = 1;
    Rational detBstar = det(Bstar);
    record("det B* = det B", detBstar == detB);

    Assignment zero{Rational(0), Rational(0), Rational(0), Rational(0)};
    Rational oneplus = det(build(Family::ONEPLUS, p, zero));
    record("det[1 + (j-i)/p] = det B* = 1", oneplus == detBstar && oneplus == 1);

    rep.ms = ms_since(t0);
    return rep;
}

std::vector<VerificationRecord> verify_range(const std::vector<Family>& families,
                                             const std::vector<OddPrime>& primes) {
    std::vector<std::pair<Family, OddPrime>> tasks;
    for (Family f : families)
        for (const OddPrime& p : primes) tasks.emplace_back(f, p);
    std::sort(tasks.begin(), tasks.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.value() < b.second.value();
    });
    std::vector<VerificationRecord> out(tasks.size(),
                                        VerificationRecord{Family::MAIN, 0, Status::skipped,
                                                           MultilinearPoly(), MultilinearPoly(),
                                                           0, ""});
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        try {
            out[t] = verify(tasks[t].first, tasks[t].second);
        } catch (const std::exception& e) {
            // exceptions cannot cross the parallel region; surface as data
            out[t] = VerificationRecord{tasks[t].first, tasks[t].second.value(),
                                        Status::fail, MultilinearPoly(), MultilinearPoly(),
                                        0, std::string("internal error: ") + e.what()};
        }
    }
    return out;
}

} // namespace legdet
