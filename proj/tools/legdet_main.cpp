#include "legdet/report.hpp"

#include "legdet/quadfield.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace legdet;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<std::uint64_t, std::uint64_t> parse_prime_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw UsageError("--primes expects lo:hi, got '" + s + "'");
    try {
        std::uint64_t lo = std::stoull(s.substr(0, colon));
        std::uint64_t hi = std::stoull(s.substr(colon + 1));
        if (lo < 3 || lo > hi)
            throw UsageError("--primes requires 3 <= lo <= hi");
        return {lo, hi};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("--primes expects integers lo:hi, got '" + s + "'");
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Selection {
    std::vector<Family> families;
    bool section3 = false;
    bool decomposition = false;
    bool products = false;
};

Selection parse_selection(const std::string& csv) {
    Selection sel;
    for (const std::string& tok : split_csv(csv)) {
        if (tok == "all") {
            sel.families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
            sel.section3 = sel.decomposition = sel.products = true;
        } else if (tok == "section3") {
            sel.section3 = true;
        } else if (tok == "decomp") {
            sel.decomposition = true;
        } else if (tok == "products") {
            sel.products = true;
        } else if (auto f = family_from_name(tok)) {
            sel.families.push_back(*f);
        } else {
            throw UsageError("unknown family tag '" + tok + "'");
        }
    }
    std::sort(sel.families.begin(), sel.families.end());
    sel.families.erase(std::unique(sel.families.begin(), sel.families.end()),
                       sel.families.end());
    return sel;
}

std::vector<Rational> parse_x_samples(const std::string& csv) {
    std::vector<Rational> xs;
    for (const std::string& tok : split_csv(csv)) {
        try {
            xs.push_back(parse_rational(tok));
        } catch (const std::exception&) {
            throw UsageError("--x-samples: cannot parse rational '" + tok + "'");
        }
    }
    return xs;
}

void write_output(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open output file '" + path + "'");
    out << payload;
    out.flush();
    if (!out.good()) {
        out.close();
        std::remove(path.c_str());
        throw IoError("failed while writing '" + path + "'");
    }
}

struct VerifyOptions {
    std::string family = "all";
    std::string primes;
    int mod4 = 0;
    std::uint64_t cyclo_max = 61;
    std::string decomp_primes;
    std::string x_samples = "0,1";
    int jobs = 0;
    std::string format = "json";
    std::string out;
    bool canonical = false; // zero elapsed fields for byte-comparable reports
};

Report run_verify(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
    if (opt.format != "json" && opt.format != "csv")
        throw UsageError("--format must be json or csv");

    Selection sel = parse_selection(opt.family);
    auto [lo, hi] = parse_prime_range(opt.primes);
    std::optional<int> filter;
    if (opt.mod4 != 0) {
        if (opt.mod4 != 1 && opt.mod4 != 3)
            throw UsageError("--mod4 must be 1 or 3");
        filter = opt.mod4;
    }
    std::vector<OddPrime> primes = primes_in(lo, hi, filter);

    std::vector<Rational> xs = parse_x_samples(opt.x_samples);
    if (sel.decomposition && xs.empty())
        throw UsageError("decomposition checks need a nonempty --x-samples list");

    std::vector<OddPrime> cyclo_primes;
    for (const OddPrime& p : primes)
        if (p.residue_class() == 1 && p.value() <= opt.cyclo_max)
            cyclo_primes.push_back(p);
    std::vector<OddPrime> decomp_primes = cyclo_primes;
    if (!opt.decomp_primes.empty()) {
        decomp_primes.clear();
        for (const std::string& tok : split_csv(opt.decomp_primes)) {
            try {
                decomp_primes.emplace_back(std::stoull(tok));
            } catch (const std::exception&) {
                throw UsageError("--decomp-primes: '" + tok + "' is not an odd prime");
            }
            if (decomp_primes.back().residue_class() != 1)
                throw UsageError("--decomp-primes: decomposition needs p == 1 (mod 4)");
        }
    }

    Report rep;
    for (const VerificationRecord& r : verify_range(sel.families, primes))
        rep.records.push_back(make_record(r));

    // exceptions cannot cross the OpenMP regions; internal errors become
    // fail records so the report (and exit code) still tell the story
    auto guarded = [](RecordKind kind, const OddPrime& p,
                      const std::function<Record()>& body) -> Record {
        try {
            return body();
        } catch (const std::exception& e) {
            return Record{kind, std::nullopt, p.value(), Status::fail, "", "",
                          std::string("internal error: ") + e.what(), 0};
        }
    };

    if (sel.section3) {
        std::vector<OddPrime> s3;
        for (const OddPrime& p : primes)
            if (p.residue_class() == 3 && p.value() > 3) s3.push_back(p);
        std::vector<Record> recs(s3.size(), Record{});
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < s3.size(); ++i)
            recs[i] = guarded(RecordKind::section3, s3[i],
                              [&] { return make_record(verify_section3(s3[i])); });
        rep.records.insert(rep.records.end(), recs.begin(), recs.end());
    }
    if (sel.products) {
        std::vector<Record> recs(cyclo_primes.size(), Record{});
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < cyclo_primes.size(); ++i)
            recs[i] = guarded(RecordKind::products, cyclo_primes[i], [&] {
                auto s = std::chrono::steady_clock::now();
                ProductIdentityReport r = verify_product_identities(cyclo_primes[i]);
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - s)
                              .count();
                return make_record(r, ms);
            });
        rep.records.insert(rep.records.end(), recs.begin(), recs.end());
    }
    if (sel.decomposition) {
        std::vector<Record> recs(decomp_primes.size(), Record{});
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < decomp_primes.size(); ++i)
            recs[i] = guarded(RecordKind::decomposition, decomp_primes[i], [&] {
                auto s = std::chrono::steady_clock::now();
                DecompositionReport r = verify_decomposition(decomp_primes[i], xs);
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - s)
                              .count();
                return make_record(r, ms);
            });
        rep.records.insert(rep.records.end(), recs.begin(), recs.end());
    }
    sort_records(rep.records);

    json families = json::array();
    for (Family f : sel.families) families.push_back(family_name(f));
    json xsj = json::array();
    for (const Rational& x : xs) xsj.push_back(rat_str(x));
    json dpj = json::array();
    for (const OddPrime& p : decomp_primes) dpj.push_back(p.value());
    rep.config_echo = {{"families", families},
                       {"primes", std::to_string(lo) + ":" + std::to_string(hi)},
                       {"mod4", opt.mod4 == 0 ? json(nullptr) : json(opt.mod4)},
                       {"cyclo_max", opt.cyclo_max},
                       {"section3", sel.section3},
                       {"products", sel.products},
                       {"decomposition", sel.decomposition},
                       {"decomp_primes", dpj},
                       {"x_samples", xsj},
                       {"format", opt.format}};
    rep.total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return rep;
}

int cmd_verify(const VerifyOptions& opt) {
    Report rep = run_verify(opt);
    std::string payload = opt.format == "json" ? report_json(rep, opt.canonical).dump(2) + "\n"
                                               : report_csv(rep, opt.canonical);
    write_output(payload, opt.out);
    std::cerr << "verify: pass=" << rep.count(Status::pass)
              << " fail=" << rep.count(Status::fail)
              << " skipped=" << rep.count(Status::skipped) << "\n";
    return rep.all_green() ? kExitOk : kExitVerifyFail;
}

struct ConstantsOptions {
    std::string primes;
    std::string format = "json";
    std::string out;
};

int cmd_constants(const ConstantsOptions& opt) {
    if (opt.format != "json" && opt.format != "csv")
        throw UsageError("--format must be json or csv");
    auto [lo, hi] = parse_prime_range(opt.primes);

    json rows = json::array();
    for (const OddPrime& p : primes_in(lo, hi)) {
        json row;
        row["p"] = p.value();
        row["mod4"] = p.residue_class();
        if (p.residue_class() == 1) {
            QuadElem eps = fundamental_unit(p);
            auto [a, b] = unit_power_coeffs(p, UnitPower::plain);
            auto [a2, b2] = unit_power_coeffs(p, UnitPower::primed);
            row["epsilon"] = eps.str();
            row["h"] = class_number_real(p);
            row["a"] = rat_str(a);
            row["b"] = rat_str(b);
            row["a_prime"] = rat_str(a2);
            row["b_prime"] = rat_str(b2);
            row["h_minus"] = nullptr;
        } else {
            row["epsilon"] = nullptr;
            row["h"] = nullptr;
            row["a"] = nullptr;
            row["b"] = nullptr;
            row["a_prime"] = nullptr;
            row["b_prime"] = nullptr;
            row["h_minus"] = p.value() > 3 ? json(class_number_imag(p)) : json(nullptr);
        }
        rows.push_back(row);
    }

    std::string payload;
    if (opt.format == "json") {
        payload = rows.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "p,mod4,epsilon,h,a,b,a_prime,b_prime,h_minus\n";
        for (const auto& row : rows) {
            auto cell = [&](const char* key) {
                return row[key].is_null()
                           ? std::string()
                           : (row[key].is_string() ? row[key].get<std::string>()
                                                   : row[key].dump());
            };
            csv << cell("p") << ',' << cell("mod4") << ',' << cell("epsilon") << ','
                << cell("h") << ',' << cell("a") << ',' << cell("b") << ','
                << cell("a_prime") << ',' << cell("b_prime") << ',' << cell("h_minus")
                << '\n';
        }
        payload = csv.str();
    }
    write_output(payload, opt.out);
    return kExitOk;
}

int cmd_golden(const VerifyOptions& opt, const std::string& golden_path) {
    std::ifstream in(golden_path, std::ios::binary);
    if (!in)
        throw IoError("cannot read golden file '" + golden_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string golden = buf.str();

    Report rep = run_verify(opt);
    std::string fresh = report_json(rep, true).dump(2) + "\n";
    if (fresh == golden) {
        std::cerr << "golden: match (" << rep.records.size() << " records)\n";
        return kExitOk;
    }

    // first differing line, as a compact diff summary
    std::istringstream a(golden), b(fresh);
    std::string la, lb;
    std::size_t line = 0;
    while (true) {
        ++line;
        bool ga = static_cast<bool>(std::getline(a, la));
        bool gb = static_cast<bool>(std::getline(b, lb));
        if (!ga && !gb) break;
        if (!ga || !gb || la != lb) {
            std::cerr << "golden: mismatch at line " << line << "\n"
                      << "- " << (ga ? la : std::string("<eof>")) << "\n"
                      << "+ " << (gb ? lb : std::string("<eof>")) << "\n";
            break;
        }
    }
    return kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of Legendre-symbol determinant identities"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    VerifyOptions vopt;
    CLI::App* verify = app.add_subcommand("verify", "verify determinant identities");
    verify->add_option("--family", vopt.family,
                       "csv of main,simple,evil,mp,oneplus,chapman,section3,decomp,products or all");
    verify->add_option("--primes", vopt.primes, "prime range lo:hi")->required();
    verify->add_option("--mod4", vopt.mod4, "restrict primes to a residue class (1 or 3)");
    verify->add_option("--cyclo-max", vopt.cyclo_max,
                       "largest prime for the cyclotomic checks in sweeps");
    verify->add_option("--decomp-primes", vopt.decomp_primes,
                       "explicit csv of primes for the decomposition check");
    verify->add_option("--x-samples", vopt.x_samples, "csv of rational x values");
    verify->add_option("--jobs", vopt.jobs, "worker threads (default: all cores)");
    verify->add_option("--format", vopt.format, "json or csv");
    verify->add_option("--out", vopt.out, "output path (default: stdout)");
    verify->add_flag("--canonical", vopt.canonical,
                     "zero elapsed fields so reports compare bytewise");

    ConstantsOptions copt;
    CLI::App* constants = app.add_subcommand("constants", "tabulate per-prime constants");
    constants->add_option("--primes", copt.primes, "prime range lo:hi")->required();
    constants->add_option("--format", copt.format, "json or csv");
    constants->add_option("--out", copt.out, "output path (default: stdout)");

    VerifyOptions gopt;
    std::string golden_path;
    CLI::App* golden = app.add_subcommand("golden", "compare a fresh canonical report to a golden file");
    golden->add_option("--family", gopt.family, "as in verify");
    golden->add_option("--primes", gopt.primes, "prime range lo:hi")->required();
    golden->add_option("--mod4", gopt.mod4, "as in verify");
    golden->add_option("--cyclo-max", gopt.cyclo_max, "as in verify");
    golden->add_option("--decomp-primes", gopt.decomp_primes, "as in verify");
    golden->add_option("--x-samples", gopt.x_samples, "as in verify");
    golden->add_option("--jobs", gopt.jobs, "as in verify");
    golden->add_option("--golden", golden_path, "golden report path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help / --version
            app.exit(e);
            return kExitOk;
        }
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(vopt);
        if (constants->parsed()) return cmd_constants(copt);
        if (golden->parsed()) return cmd_golden(gopt, golden_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
