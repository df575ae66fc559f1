#include "legdet/multilinear.hpp"

#include "legdet/det.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace legdet {

namespace {

constexpr char kVarNames[4] = {'x', 'y', 'z', 'w'};

// Canonical order: monomial size first, then lexicographic on the variable
// sequence (x < y < z < w). For equal popcount this is lexicographic
// comparison of the ascending bit-position lists.
bool mono_less(unsigned a, unsigned b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    while (a != 0 && b != 0) {
        int la = std::countr_zero(a), lb = std::countr_zero(b);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

} // namespace

MultilinearityError::MultilinearityError(const Rational& poly, const Rational& dv)
    : std::runtime_error("det_multilinear: determinant is not multilinear in the "
                         "declared variables (poly gives " + rat_str(poly) +
                         ", determinant gives " + rat_str(dv) + " at the check point)"),
      poly_value(poly), det_value(dv) {}

MultilinearPoly MultilinearPoly::constant(const Rational& c) {
    MultilinearPoly p(0);
    p.set_coeff(0, c);
    return p;
}

void MultilinearPoly::set_coeff(unsigned mono, const Rational& c) {
    if ((mono & ~vars_) != 0)
        throw std::invalid_argument("MultilinearPoly: monomial outside variable set");
    if (c == 0)
        coef_.erase(mono);
    else
        coef_[mono] = c;
}

Rational MultilinearPoly::coeff(unsigned mono) const {
    auto it = coef_.find(mono);
    return it == coef_.end() ? Rational(0) : it->second;
}

Rational MultilinearPoly::evaluate(const Assignment& a) const {
    Rational acc = 0;
    for (const auto& [mono, c] : coef_) {
        Rational term = c;
        for (int v = 0; v < 4; ++v)
            if (mono & (1u << v)) term *= a[v];
        acc += term;
    }
    return acc;
}

std::string MultilinearPoly::mono_str(unsigned mono) {
    if (mono == 0) return "1";
    std::string s;
    for (int v = 0; v < 4; ++v) {
        if (!(mono & (1u << v))) continue;
        if (!s.empty()) s += '*';
        s += kVarNames[v];
    }
    return s;
}

std::string MultilinearPoly::str() const {
    std::vector<unsigned> monos;
    monos.reserve(coef_.size());
    for (const auto& [mono, c] : coef_) monos.push_back(mono);
    std::sort(monos.begin(), monos.end(), mono_less);

    if (monos.empty()) return "0";
    std::string out;
    for (unsigned mono : monos) {
        const Rational& c = coef_.at(mono);
        bool negative = c < 0;
        Rational abs = negative ? Rational(-c) : c;
        std::string term;
        if (mono == 0)
            term = rat_str(abs);
        else if (abs == 1)
            term = mono_str(mono);
        else
            term = rat_str(abs) + "*" + mono_str(mono);
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += (negative ? " - " : " + ") + term;
    }
    return out;
}

std::string MultilinearPoly::first_mismatch(const MultilinearPoly& computed,
                                            const MultilinearPoly& expected) {
    std::vector<unsigned> monos;
    for (const auto& [mono, c] : computed.coef_) monos.push_back(mono);
    for (const auto& [mono, c] : expected.coef_) monos.push_back(mono);
    std::sort(monos.begin(), monos.end(), mono_less);
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    for (unsigned mono : monos) {
        Rational a = computed.coeff(mono), b = expected.coeff(mono);
        if (a != b)
            return "coefficient on " + mono_str(mono) + ": computed " + rat_str(a) +
                   ", expected " + rat_str(b);
    }
    return "";
}

MultilinearPoly det_multilinear(const std::function<RatMatrix(const Assignment&)>& builder,
                                unsigned vars_mask) {
    std::vector<int> var_bits;
    for (int v = 0; v < 4; ++v)
        if (vars_mask & (1u << v)) var_bits.push_back(v);
    const unsigned k = static_cast<unsigned>(var_bits.size());

    // det at every 0/1 assignment of the declared variables
    std::vector<Rational> values(1u << k);
    for (unsigned s = 0; s < (1u << k); ++s) {
        Assignment a{Rational(0), Rational(0), Rational(0), Rational(0)};
        for (unsigned b = 0; b < k; ++b)
            if (s & (1u << b)) a[var_bits[b]] = 1;
        values[s] = det(builder(a));
    }

    // Moebius inversion over the subset lattice: coeff(S) = sum_{T <= S}
    // (-1)^{|S - T|} det(sigma_T)
    MultilinearPoly poly(vars_mask);
    for (unsigned s = 0; s < (1u << k); ++s) {
        Rational c = 0;
        for (unsigned t = s;; t = (t - 1) & s) {
            int sgn = (std::popcount(s ^ t) % 2 == 0) ? 1 : -1;
            c += sgn > 0 ? values[t] : -values[t];
            if (t == 0) break;
        }
        unsigned mono = 0;
        for (unsigned b = 0; b < k; ++b)
            if (s & (1u << b)) mono |= (1u << var_bits[b]);
        poly.set_coeff(mono, c);
    }

    // affineness post-check at an extra point
    Assignment two{Rational(2), Rational(2), Rational(2), Rational(2)};
    Rational det_at_two = det(builder(two));
    Rational poly_at_two = poly.evaluate(two);
    if (det_at_two != poly_at_two)
        throw MultilinearityError(poly_at_two, det_at_two);
    return poly;
}

} // namespace legdet
