#include "legdet/report.hpp"

#include <algorithm>
#include <sstream>

namespace legdet {

using nlohmann::json;

std::string kind_name(RecordKind k) {
    switch (k) {
        case RecordKind::identity: return "identity";
        case RecordKind::decomposition: return "decomposition";
        case RecordKind::products: return "products";
        case RecordKind::section3: return "section3";
    }
    return "?";
}

Record make_record(const VerificationRecord& r) {
    Record rec{RecordKind::identity, r.family, r.p, r.status, "", "", r.detail, r.ms};
    if (r.status != Status::skipped) {
        rec.computed = r.computed.str();
        rec.expected = r.expected.str();
    }
    return rec;
}

Record make_record(const DecompositionReport& r, std::int64_t ms) {
    Record rec{RecordKind::decomposition, std::nullopt, r.p,
               r.passed ? Status::pass : Status::fail, "", "", "", ms};
    std::string detail;
    for (const auto& chk : r.checks) {
        if (!detail.empty()) detail += "; ";
        detail += chk.label + ": " + (chk.passed ? "pass" : "fail");
        if (!chk.passed) detail += " (" + chk.mismatch + ")";
    }
    rec.detail = detail;
    rec.computed = r.passed ? "equal" : "mismatch";
    rec.expected = "equal";
    return rec;
}

Record make_record(const ProductIdentityReport& r, std::int64_t ms) {
    Record rec{RecordKind::products, std::nullopt, r.p,
               r.passed() ? Status::pass : Status::fail, "", "", r.detail, ms};
    rec.computed = r.passed() ? "5/5" : "failed sub-identity " + std::to_string(r.failed_index);
    rec.expected = "5/5";
    return rec;
}

Record make_record(const Section3Report& r) {
    Record rec{RecordKind::section3, std::nullopt, r.p,
               r.passed ? Status::pass : Status::fail, "", "", "", r.ms};
    std::size_t ok = 0;
    for (const auto& chk : r.checks) ok += chk.passed ? 1 : 0;
    rec.computed = std::to_string(ok) + "/" + std::to_string(r.checks.size()) + " checks";
    rec.expected = std::to_string(r.checks.size()) + "/" + std::to_string(r.checks.size()) + " checks";
    rec.detail = r.passed ? "" : r.detail;
    return rec;
}

void sort_records(std::vector<Record>& records) {
    std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.family != b.family) return a.family < b.family;
        return a.p < b.p;
    });
}

std::size_t Report::count(Status s) const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.status == s ? 1 : 0;
    return n;
}

namespace {

json record_json(const Record& r, bool zero_ms) {
    json j;
    j["kind"] = kind_name(r.kind);
    if (r.family)
        j["family"] = family_name(*r.family);
    else
        j["family"] = nullptr;
    j["p"] = r.p;
    j["status"] = status_name(r.status);
    j["computed"] = r.computed;
    j["expected"] = r.expected;
    if (r.detail.empty())
        j["detail"] = nullptr;
    else
        j["detail"] = r.detail;
    j["ms"] = zero_ms ? 0 : r.ms;
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

json report_json(const Report& rep, bool zero_ms) {
    json j;
    j["version"] = kToolVersion;
    j["config"] = rep.config_echo;
    j["records"] = json::array();
    for (const auto& r : rep.records) j["records"].push_back(record_json(r, zero_ms));
    j["summary"] = {{"pass", rep.count(Status::pass)},
                    {"fail", rep.count(Status::fail)},
                    {"skipped", rep.count(Status::skipped)}};
    j["total_ms"] = zero_ms ? 0 : rep.total_ms;
    return j;
}

std::string report_csv(const Report& rep, bool zero_ms) {
    std::ostringstream out;
    out << "kind,family,p,status,computed,expected,detail,ms\n";
    for (const auto& r : rep.records) {
        out << kind_name(r.kind) << ',' << (r.family ? family_name(*r.family) : "") << ','
            << r.p << ',' << status_name(r.status) << ',' << csv_escape(r.computed) << ','
            << csv_escape(r.expected) << ',' << csv_escape(r.detail) << ','
            << (zero_ms ? 0 : r.ms) << '\n';
    }
    return out.str();
}

} // namespace legdet
