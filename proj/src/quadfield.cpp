#include "legdet/quadfield.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace legdet {

namespace {

void require_1mod4(const OddPrime& p, const char* who) {
    if (p.residue_class() != 1)
        throw std::invalid_argument(std::string(who) + ": requires p == 1 (mod 4)");
}

struct CfState {
    Integer P, Q;
    bool operator<(const CfState& o) const {
        int c = cmp(P, o.P);
        if (c != 0) return c < 0;
        return cmp(Q, o.Q) < 0;
    }
};

// Continued fraction of (1 + sqrt(p))/2. Walks states (P_k, Q_k) until one
// repeats; the matrix product over the cycle gives the fundamental
// automorphism, hence the fundamental unit of the maximal order.
QuadElem cf_fundamental_unit(const OddPrime& prime) {
    const Integer d(static_cast<unsigned long>(prime.value()));
    Integer isqrt_d;
    mpz_sqrt(isqrt_d.get_mpz_t(), d.get_mpz_t());

    std::vector<CfState> states;
    std::vector<Integer> quotients;
    std::map<CfState, std::size_t> seen;

    CfState s{Integer(1), Integer(2)};
    std::size_t cycle_start = 0;
    while (true) {
        auto it = seen.find(s);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen[s] = states.size();
        states.push_back(s);
        if (s.Q <= 0)
            throw std::logic_error("cf_fundamental_unit: nonpositive Q in expansion");
        Integer a = (s.P + isqrt_d) / s.Q; // floor: sqrt(p) irrational, Q > 0
        quotients.push_back(a);
        CfState next;
        next.P = a * s.Q - s.P;
        next.Q = (d - next.P * next.P) / s.Q;
        s = next;
    }

    // product of [[a,1],[1,0]] over one period, applied at the cycle entry
    Integer m00(1), m01(0), m10(0), m11(1);
    for (std::size_t k = cycle_start; k < quotients.size(); ++k) {
        Integer n00 = m00 * quotients[k] + m01;
        Integer n10 = m10 * quotients[k] + m11;
        m01 = m00;
        m11 = m10;
        m00 = n00;
        m10 = n10;
    }
    // eps = m10 * x + m11 at the fixed point x = (P + sqrt(p))/Q
    const CfState& entry = states[cycle_start];
    Rational a(m10 * entry.P + m11 * entry.Q, entry.Q);
    Rational b(m10, entry.Q);
    a.canonicalize();
    b.canonicalize();
    QuadElem eps{a, b, prime};
    if (eps.norm() != -1)
        throw std::logic_error("fundamental_unit: norm(eps) != -1 for prime p == 1 (mod 4)");
    Rational ta = 2 * eps.a, tb = 2 * eps.b;
    if (!is_integer(ta) || !is_integer(tb) ||
        (ta.get_num() - tb.get_num()) % 2 != 0)
        throw std::logic_error("fundamental_unit: unit not in the maximal order");
    return eps;
}

} // namespace

QuadElem QuadElem::operator*(const QuadElem& o) const {
    if (p != o.p)
        throw std::invalid_argument("QuadElem: mixed radicands");
    Rational pr(static_cast<long>(p));
    return QuadElem{a * o.a + pr * b * o.b, a * o.b + b * o.a, OddPrime(p)};
}

QuadElem QuadElem::pow(unsigned long e) const {
    QuadElem base = *this;
    QuadElem acc{Rational(1), Rational(0), OddPrime(p)};
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string QuadElem::str() const {
    std::string s = rat_str(a);
    if (b == 0) return s;
    if (b > 0) s += "+";
    s += rat_str(b) + "*sqrt(" + std::to_string(p) + ")";
    return s;
}

QuadElem fundamental_unit(const OddPrime& p) {
    require_1mod4(p, "fundamental_unit");
    return cf_fundamental_unit(p);
}

std::vector<QuadForm> reduced_forms_real(const OddPrime& prime) {
    require_1mod4(prime, "reduced_forms_real");
    const long d = static_cast<long>(prime.value());
    Integer dz(d);
    Integer sz;
    mpz_sqrt(sz.get_mpz_t(), dz.get_mpz_t());
    const long s = sz.get_si(); // floor(sqrt(d))

    // |sqrt(d) - 2|a|| < b < sqrt(d), tested exactly on squares
    auto reduced = [&](long a_abs, long b) {
        if (b <= 0 || b > s) return false;
        long t = 2 * a_abs - b;
        if (t > 0 && t * t >= d) return false;
        long u = 2 * a_abs + b;
        return d < u * u;
    };

    std::vector<QuadForm> forms;
    for (long b = 1; b <= s; b += 2) {
        long m = (d - b * b) / 4; // ac = -m, m > 0 since reduced forms have ac < 0
        for (long a = 1; a <= m; ++a) {
            if (m % a != 0) continue;
            if (!reduced(a, b)) continue;
            long c = -(m / a);
            forms.push_back({a, b, c});
            forms.push_back({-a, b, -c});
        }
    }
    std::sort(forms.begin(), forms.end());
    return forms;
}

std::vector<QuadForm> reduced_forms_imag(const OddPrime& prime) {
    if (prime.residue_class() != 3 || prime.value() == 3)
        throw std::invalid_argument("reduced_forms_imag: requires p == 3 (mod 4), p > 3");
    const long p = static_cast<long>(prime.value());

    // -a < b <= a <= c, b >= 0 when a = c or |b| = a
    std::vector<QuadForm> forms;
    for (long a = 1; 3 * a * a <= p; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if ((b & 1) == 0) continue; // b odd since -p == 1 (mod 4)
            long num = b * b + p;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (a == c || -b == a)) continue;
            forms.push_back({a, b, c});
        }
    }
    std::sort(forms.begin(), forms.end());
    return forms;
}

long class_number_real(const OddPrime& prime) {
    require_1mod4(prime, "class_number_real");
    const long d = static_cast<long>(prime.value());
    Integer dz(d);
    Integer sz;
    mpz_sqrt(sz.get_mpz_t(), dz.get_mpz_t());
    const long s = sz.get_si();

    std::map<QuadForm, bool> visited;
    for (const QuadForm& f : reduced_forms_real(prime)) visited[f] = false;

    // rho: (a,b,c) -> (c, b', (b'^2 - d)/(4c)), b' = s - ((s + b) mod 2|c|)
    auto rho = [&](const QuadForm& f) -> QuadForm {
        long ca = f.c < 0 ? -f.c : f.c;
        long mod = 2 * ca;
        long b2 = s - ((s + f.b) % mod + mod) % mod;
        long c2 = (b2 * b2 - d) / (4 * f.c);
        return {f.c, b2, c2};
    };

    long cycles = 0;
    for (auto& [form, seen] : visited) {
        if (seen) continue;
        ++cycles;
        QuadForm f = form;
        while (true) {
            auto it = visited.find(f);
            if (it == visited.end())
                throw std::logic_error("class_number_real: rho left the reduced set");
            if (it->second) break;
            it->second = true;
            f = rho(f);
        }
    }
    return cycles;
}

long class_number_imag(const OddPrime& prime) {
    if (prime.residue_class() != 3 || prime.value() == 3)
        throw std::invalid_argument("class_number_imag: requires p == 3 (mod 4), p > 3");
    const long p = static_cast<long>(prime.value());
    long count = static_cast<long>(reduced_forms_imag(prime).size());

    // Dirichlet count: h(-p) = (#QR - #NQR in (0, p/2)) / (2 - (2/p))
    long diff = 0;
    for (long a = 1; 2 * a < p; ++a) diff += legendre(a, prime);
    long denom = 2 - legendre(2, prime);
    if (diff % denom != 0 || diff / denom != count)
        throw std::logic_error("class_number_imag: form count and character sum disagree");
    if (count % 2 == 0)
        throw std::logic_error("class_number_imag: h(-p) must be odd");
    return count;
}

std::pair<Rational, Rational> unit_power_coeffs(const OddPrime& p, UnitPower variant) {
    require_1mod4(p, "unit_power_coeffs");
    QuadElem eps = fundamental_unit(p);
    long h = class_number_real(p);
    unsigned long e = static_cast<unsigned long>(h);
    if (variant == UnitPower::primed)
        e *= static_cast<unsigned long>(2 - legendre(2, p));
    QuadElem powed = eps.pow(e);
    if (powed.a * powed.a - Rational(static_cast<long>(p.value())) * powed.b * powed.b != -1)
        throw std::logic_error("unit_power_coeffs: norm of eps^e is not -1");
    if (powed.a <= 0 || powed.b <= 0)
        throw std::logic_error("unit_power_coeffs: expected positive coordinates");
    return {powed.a, powed.b};
}

} // namespace legdet
