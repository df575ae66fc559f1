#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace legdet {

inline constexpr std::uint64_t kMaxSupportedPrime = (1ULL << 32) - 1;

/// An odd prime p >= 3, validated on construction by a deterministic
/// Miller-Rabin check (witnesses {2, 7, 61}, valid for the whole supported
/// range below 2^32). Caches p mod 4.
class OddPrime {
public:
    explicit OddPrime(std::uint64_t value);

    std::uint64_t value() const { return value_; }
    int residue_class() const { return residue_class_; } // p mod 4, in {1, 3}
    std::uint64_t half() const { return (value_ - 1) / 2; } // n = (p-1)/2

    bool operator==(const OddPrime& o) const { return value_ == o.value_; }

private:
    std::uint64_t value_;
    int residue_class_;
};

/// Deterministic primality test for n < 2^32.
bool is_prime_u32(std::uint64_t n);

/// Legendre symbol (a/p) in {-1, 0, +1}; a is reduced mod p internally.
/// Computed by the Jacobi reciprocity algorithm, O(log^2 p).
int legendre(std::int64_t a, const OddPrime& p);

/// Euler-criterion evaluation of (a/p) by modular exponentiation. Slower;
/// kept as an independent cross-check of legendre().
int legendre_euler(std::int64_t a, const OddPrime& p);

/// Primes p with lo <= p <= hi, ascending, optionally restricted to
/// p ≡ filter (mod 4). Requires 3 <= lo <= hi.
std::vector<OddPrime> primes_in(std::uint64_t lo, std::uint64_t hi,
                                std::optional<int> filter = std::nullopt);

} // namespace legdet
