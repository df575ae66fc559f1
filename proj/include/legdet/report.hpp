#pragma once

#include "legdet/cyclotomic.hpp"
#include "legdet/identities.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace legdet {

inline constexpr const char* kToolVersion = "legdet 1.0.0";

enum class RecordKind { identity, decomposition, products, section3 };
std::string kind_name(RecordKind k);

/// Uniform row shared by all verifier outputs.
struct Record {
    RecordKind kind;
    std::optional<Family> family; // identity records only
    std::uint64_t p;
    Status status;
    std::string computed; // canonical polynomial text for identity records
    std::string expected;
    std::string detail; // empty renders as null
    std::int64_t ms;
};

Record make_record(const VerificationRecord& r);
Record make_record(const DecompositionReport& r, std::int64_t ms);
Record make_record(const ProductIdentityReport& r, std::int64_t ms);
Record make_record(const Section3Report& r);

/// Sort by (kind, family, p); the canonical report order.
void sort_records(std::vector<Record>& records);

struct Report {
    nlohmann::json config_echo;
    std::vector<Record> records;
    std::int64_t total_ms = 0;

    std::size_t count(Status s) const;
    bool all_green() const { return count(Status::fail) == 0; }
};

/// Canonical JSON: sorted keys, rationals and polynomials as canonical
/// strings. zero_ms drops timing so reports compare bytewise.
nlohmann::json report_json(const Report& rep, bool zero_ms);
std::string report_csv(const Report& rep, bool zero_ms);

} // namespace legdet
