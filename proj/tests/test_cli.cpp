#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "legdet_cli_test";
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args) {
    fs::path dir = scratch_dir();
    fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    std::string cmd = std::string(LEGDET_BIN) + " " + args + " > " + out.string() +
                      " 2> " + err.string();
    int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify main over 3:20 passes for all seven primes") {
    RunResult r = run_cli("verify --family main --primes 3:20");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["summary"]["pass"] == 7);
    CHECK(rep["summary"]["fail"] == 0);
    CHECK(rep["records"].size() == 7);
    CHECK(rep["records"][0]["kind"] == "identity");
    CHECK(rep["records"][0]["family"] == "main");
    CHECK(rep["records"][0]["p"] == 3);
    CHECK(rep["records"][0]["computed"] == "x");
}

TEST_CASE("verify evil and mp at p = 5 reports the spot values") {
    RunResult r = run_cli("verify --family evil,mp --primes 5:5");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    REQUIRE(rep["records"].size() == 2);
    CHECK(rep["records"][0]["family"] == "evil");
    CHECK(rep["records"][0]["computed"] == "-2");
    CHECK(rep["records"][1]["family"] == "mp");
    CHECK(rep["records"][1]["computed"] == "-1");
}

TEST_CASE("empty prime range yields an empty green report") {
    RunResult r = run_cli("verify --family main --primes 4:4");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["records"].empty());
    CHECK(rep["summary"]["pass"] == 0);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("verify --family main --primes 2:10").exit_code == 2);
    CHECK(run_cli("verify --family bogus --primes 3:10").exit_code == 2);
    CHECK(run_cli("verify --primes nonsense").exit_code == 2);
    CHECK(run_cli("verify --family main --primes 3:10 --format yaml").exit_code == 2);
    CHECK(run_cli("nosuchcommand").exit_code == 2);
}

TEST_CASE("constants emits the quadratic field data") {
    RunResult r5 = run_cli("constants --primes 5:5");
    REQUIRE(r5.exit_code == 0);
    json rows = json::parse(r5.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["epsilon"] == "1/2+1/2*sqrt(5)");
    CHECK(rows[0]["h"] == 1);
    CHECK(rows[0]["a_prime"] == "2");
    CHECK(rows[0]["b_prime"] == "1");

    json r7 = json::parse(run_cli("constants --primes 7:7").out);
    CHECK(r7[0]["h_minus"] == 1);
    CHECK(r7[0]["epsilon"].is_null());

    json r13 = json::parse(run_cli("constants --primes 13:13").out);
    CHECK(r13[0]["a_prime"] == "18");
    CHECK(r13[0]["b_prime"] == "5");
}

TEST_CASE("canonical reports are byte-identical across runs and jobs") {
    fs::path dir = scratch_dir();
    fs::path r1 = dir / "run1.json", r2 = dir / "run2.json";
    std::string flags = "verify --family main,simple,section3 --primes 3:40 --canonical ";
    REQUIRE(run_cli(flags + "--jobs 1 --out " + r1.string()).exit_code == 0);
    REQUIRE(run_cli(flags + "--jobs 2 --out " + r2.string()).exit_code == 0);
    std::string b1 = slurp_file(r1), b2 = slurp_file(r2);
    CHECK(!b1.empty());
    CHECK(b1 == b2);
}

TEST_CASE("csv and json formats carry identical record data") {
    std::string flags = "--family main,evil --primes 3:20 --canonical";
    json rep = json::parse(run_cli("verify " + flags + " --format json").out);
    std::string csv = run_cli("verify " + flags + " --format csv").out;

    std::istringstream lines(csv);
    std::string header;
    REQUIRE(std::getline(lines, header));
    CHECK(header == "kind,family,p,status,computed,expected,detail,ms");
    std::size_t i = 0;
    std::string line;
    while (std::getline(lines, line)) {
        REQUIRE(i < rep["records"].size());
        const json& rec = rep["records"][i];
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() >= 7);
        CHECK(cells[0] == rec["kind"]);
        CHECK(cells[1] == rec["family"]);
        CHECK(cells[2] == std::to_string(rec["p"].get<std::uint64_t>()));
        CHECK(cells[3] == rec["status"]);
        // polynomials in this config contain no commas, so cells align
        CHECK(cells[4] == rec["computed"]);
        CHECK(cells[5] == rec["expected"]);
        ++i;
    }
    CHECK(i == rep["records"].size());
}

TEST_CASE("golden comparison: reflexive, flipped byte, missing file") {
    fs::path dir = scratch_dir();
    fs::path gold = dir / "golden.json";
    std::string flags = "--family evil,mp --primes 3:30";
    REQUIRE(run_cli("verify " + flags + " --canonical --out " + gold.string()).exit_code == 0);

    CHECK(run_cli("golden " + flags + " --golden " + gold.string()).exit_code == 0);

    std::string tampered = slurp_file(gold);
    auto pos = tampered.find("-2");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 2, "-3");
    fs::path bad = dir / "tampered.json";
    std::ofstream(bad, std::ios::binary) << tampered;
    RunResult mism = run_cli("golden " + flags + " --golden " + bad.string());
    CHECK(mism.exit_code == 1);
    CHECK(mism.err.find("mismatch") != std::string::npos);

    CHECK(run_cli("golden " + flags + " --golden " + (dir / "missing.json").string()).exit_code == 3);
}

TEST_CASE("checked-in golden file stays reproducible") {
    fs::path gold = fs::path(LEGDET_GOLDEN_DIR) / "families_3_30.json";
    REQUIRE(fs::exists(gold));
    RunResult r = run_cli("golden --family main,simple,evil,mp,oneplus,chapman --primes 3:30 --golden " +
                          gold.string());
    CHECK(r.exit_code == 0);
}

TEST_CASE("unwritable output path exits with the IO code and no partial file") {
    RunResult r = run_cli("verify --family evil --primes 5:5 --out /nonexistent-dir/report.json");
    CHECK(r.exit_code == 3);
}
