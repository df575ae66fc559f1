#pragma once

#include "legdet/multilinear.hpp"
#include "legdet/numtheory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace legdet {

/// Matrix families, each fixing index ranges and the entry formula:
///   MAIN:    [x + ((i-j)/p) + (i/p)y + (j/p)z + (ij/p)w], 0 <= i,j <= (p-3)/2
///   SIMPLE:  [x + ((i-j)/p)],                             1 <= i,j <= (p-1)/2
///   EVIL:    [((i-j)/p)],                                 0 <= i,j <= (p-1)/2
///   MP:      EVIL with the first row replaced by all 1
///   ONEPLUS: [1 + ((j-i)/p)],                             1 <= i,j <= (p-1)/2
///   CHAPMAN: [x + ((i+j-1)/p)],                           1 <= i,j <= (p+1)/2
enum class Family { MAIN, SIMPLE, EVIL, MP, ONEPLUS, CHAPMAN };

inline constexpr Family kAllFamilies[] = {Family::MAIN,    Family::SIMPLE,
                                          Family::EVIL,    Family::MP,
                                          Family::ONEPLUS, Family::CHAPMAN};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// Variable set the family's determinant is multilinear in.
unsigned family_vars(Family f);

/// Exact matrix of the family at the given variable assignment.
RatMatrix build(Family f, const OddPrime& p, const Assignment& a);

/// Thrown by closed_form when the closed form is not defined for this
/// residue class / prime (e.g. MP and the CHAPMAN 3-mod-4 branch need p > 3).
struct FamilySkip : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The family's closed-form determinant value, constants pulled from
/// quadfield. Throws FamilySkip for out-of-branch p.
MultilinearPoly closed_form(Family f, const OddPrime& p);

enum class Status { pass, fail, skipped };
std::string status_name(Status s);

struct VerificationRecord {
    Family family;
    std::uint64_t p;
    Status status;
    MultilinearPoly computed; // empty for skipped
    MultilinearPoly expected;
    std::int64_t ms;
    std::string detail; // first coefficient mismatch, or skip reason
};

/// Compares det_multilinear over the family's variable set against the
/// closed form. Out-of-branch primes yield a skipped record.
VerificationRecord verify(Family f, const OddPrime& p);

struct Section3Check {
    std::string name;
    bool passed;
};

struct Section3Report {
    std::uint64_t p;
    bool passed;
    std::vector<Section3Check> checks;
    std::string detail;
    std::int64_t ms;
};

/// Executes the triangular-matrix construction behind the all-ones
/// determinant identity for p == 3 (mod 4), p > 3: solves
/// sum_i ((j-i)/p) c_i = 1, forms the triangular A with last row c,
/// B = M* A^T, B_* with corner 1, and checks the determinant chain down to
/// det[1 + ((j-i)/p)] = 1.
Section3Report verify_section3(const OddPrime& p);

/// One record per (family, p) pair, sorted by (family, p); pairs are
/// verified in parallel.
std::vector<VerificationRecord> verify_range(const std::vector<Family>& families,
                                             const std::vector<OddPrime>& primes);

} // namespace legdet
