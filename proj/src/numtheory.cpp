#include "legdet/numtheory.hpp"

#include <stdexcept>
#include <string>

namespace legdet {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    // operands stay below 2^32, so the product fits in 64 bits
    return (a * b) % m;
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u32(std::uint64_t n) {
    if (n > kMaxSupportedPrime)
        throw std::invalid_argument("is_prime_u32: value above supported range 2^32");
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // {2, 7, 61} is exact for n < 4'759'123'141 > 2^32
    for (std::uint64_t w : {2ULL, 7ULL, 61ULL}) {
        if (w % n == 0) continue;
        std::uint64_t x = powmod_u64(w, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

OddPrime::OddPrime(std::uint64_t value) : value_(value) {
    if (value < 3 || value % 2 == 0 || !is_prime_u32(value))
        throw std::invalid_argument("OddPrime: " + std::to_string(value) +
                                    " is not an odd prime in the supported range");
    residue_class_ = static_cast<int>(value % 4);
}

int legendre(std::int64_t a, const OddPrime& p) {
    std::uint64_t n = p.value();
    std::int64_t r = a % static_cast<std::int64_t>(n);
    if (r < 0) r += static_cast<std::int64_t>(n);
    std::uint64_t u = static_cast<std::uint64_t>(r);
    if (u == 0) return 0;

    // Jacobi symbol via reciprocity; n is prime here so this is the
    // Legendre symbol.
    int sign = 1;
    while (u != 0) {
        while ((u & 1) == 0) {
            u >>= 1;
            std::uint64_t m8 = n & 7;
            if (m8 == 3 || m8 == 5) sign = -sign;
        }
        std::swap(u, n);
        if ((u & 3) == 3 && (n & 3) == 3) sign = -sign;
        u %= n;
    }
    return n == 1 ? sign : 0;
}

int legendre_euler(std::int64_t a, const OddPrime& p) {
    std::uint64_t n = p.value();
    std::int64_t r = a % static_cast<std::int64_t>(n);
    if (r < 0) r += static_cast<std::int64_t>(n);
    if (r == 0) return 0;
    std::uint64_t e = powmod_u64(static_cast<std::uint64_t>(r), (n - 1) / 2, n);
    if (e == 1) return 1;
    if (e == n - 1) return -1;
    throw std::logic_error("legendre_euler: a^((p-1)/2) not in {1, -1} mod p");
}

std::vector<OddPrime> primes_in(std::uint64_t lo, std::uint64_t hi,
                                std::optional<int> filter) {
    if (lo < 3 || lo > hi)
        throw std::invalid_argument("primes_in: requires 3 <= lo <= hi");
    if (filter && *filter != 1 && *filter != 3)
        throw std::invalid_argument("primes_in: residue filter must be 1 or 3");
    std::vector<OddPrime> out;
    for (std::uint64_t v = lo | 1; v <= hi; v += 2) {
        if (!is_prime_u32(v)) continue;
        if (filter && v % 4 != static_cast<std::uint64_t>(*filter)) continue;
        out.emplace_back(v);
    }
    return out;
}

} // namespace legdet
