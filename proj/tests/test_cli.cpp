// End-to-end drive of the command-line binary: exit codes, report content,
// determinism of the matrix artifact, and the fixture behaviors.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "octt/config.hpp"
#include "octt/cusps.hpp"
#include "octt/digest.hpp"

using namespace octt;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out; // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(OCTT_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Extract the remainder of the line following `key`.
std::string line_value(const std::string& text, const std::string& key) {
    const std::size_t at = text.find(key);
    if (at == std::string::npos) return {};
    const std::size_t start = at + key.size();
    const std::size_t end = text.find('\n', start);
    std::string v = text.substr(start, end - start);
    while (!v.empty() && v.front() == ' ') v.erase(v.begin());
    return v;
}

fs::path scratch_dir() {
    const fs::path d = fs::current_path() / "cli_scratch";
    fs::create_directories(d);
    return d;
}

} // namespace

TEST_CASE("verify algebra suite passes") {
    const RunResult r = run_cli("verify --suite algebra");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "config_hash: "));
    CHECK(contains(r.out, "N(xy)=N(x)N(y): pass"));
    CHECK(contains(r.out, "norm shells 240 and 2160: pass"));
    CHECK(contains(r.out, "7/7 checks passed"));
}

TEST_CASE("verify embedding discovers and caches the calibration") {
    const fs::path cfg_path = scratch_dir() / "cfg.json";
    fs::remove(cfg_path);

    const RunResult first =
        run_cli("--config " + cfg_path.string() + " verify --suite embedding");
    CHECK(first.code == 0);
    CHECK(contains(first.out, "chart calibration: pass"));
    CHECK(contains(first.out, "generator equivariance residual: pass"));
    CHECK(contains(first.out, "calibration: minus-conj"));
    CHECK(contains(first.out, "calibration cached to"));

    REQUIRE(fs::exists(cfg_path));
    const Config cached = load_config(cfg_path.string());
    CHECK(cached.calibration == "minus-conj");

    // A second run uses the cached chart (no fresh discovery message).
    const RunResult second =
        run_cli("--config " + cfg_path.string() + " verify --suite embedding");
    CHECK(second.code == 0);
    CHECK(contains(second.out, "calibration: minus-conj"));
    CHECK(!contains(second.out, "calibration cached to"));
}

TEST_CASE("verify embedding with a forced wrong calibration fails") {
    const RunResult r =
        run_cli("verify --suite embedding --calibration identity");
    CHECK(r.code == 1);
    CHECK(contains(r.out, "generator equivariance residual: fail"));
    CHECK(contains(r.out, "counterexample"));
    CHECK(contains(r.out, "residual"));
}

TEST_CASE("cusp-matrix artifact is thread-count independent, rank certifies") {
    const fs::path a = scratch_dir() / "matrix_a.octt";
    const fs::path b = scratch_dir() / "matrix_b.octt";

    const RunResult ra =
        run_cli("--threads 1 cusp-matrix --out " + a.string());
    REQUIRE(ra.code == 0);
    CHECK(contains(ra.out, "rows: 2047"));
    CHECK(contains(ra.out, "columns: 65536"));
    CHECK(contains(ra.out, "isotropic classes: 2079"));

    const RunResult rb =
        run_cli("--threads 2 cusp-matrix --out " + b.string());
    REQUIRE(rb.code == 0);

    const std::string ha = line_value(ra.out, "sha256:");
    const std::string hb = line_value(rb.out, "sha256:");
    CHECK(ha.size() == 64);
    CHECK(ha == hb);
    CHECK(sha256_file(a.string()) == ha);

    // Rank certification over the default primes on the written file.
    const RunResult rr = run_cli("rank --matrix " + a.string());
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "rank mod 10009: 715"));
    CHECK(contains(rr.out, "rank mod 1000033: 715"));
    CHECK(contains(rr.out, "agreed rank: 715"));
    CHECK(contains(rr.out, "pivot columns agree: yes"));
    CHECK(contains(rr.out, "denominator vector in span: yes"));
}

TEST_CASE("rank on the tiny identity fixture") {
    const fs::path fixture = scratch_dir() / "identity4.octt";
    CuspMatrix m;
    m.rows = m.cols = 4;
    m.entries.assign(16, 255); // undefined marker contributes zero
    for (int i = 0; i < 4; ++i) m.entries[std::size_t(5) * i] = 0; // i^0 = 1
    m.denominators.assign(4, 1);
    write_cusp_matrix(fixture.string(), m);

    const RunResult r = run_cli("rank --matrix " + fixture.string());
    CHECK(r.code == 0);
    CHECK(contains(r.out, "agreed rank: 4"));
    CHECK(contains(r.out, "denominator vector in span: yes"));
}

TEST_CASE("rank rejects inadmissible primes with exit 3") {
    const fs::path fixture = scratch_dir() / "identity4.octt";
    REQUIRE(fs::exists(fixture));
    // 7 = 3 (mod 4); 10013 = 17 * 19 * 31 is composite.
    CHECK(run_cli("rank --matrix " + fixture.string() + " --primes 7,10009")
              .code == 3);
    CHECK(run_cli("rank --matrix " + fixture.string() +
                  " --primes 10013,1000033")
              .code == 3);
    // Unreadable matrix file: I/O failure.
    CHECK(run_cli("rank --matrix " + (scratch_dir() / "missing.octt").string())
              .code == 2);
}

TEST_CASE("eval-theta agrees on the base characteristic at (2i,2i,0)") {
    const RunResult r =
        run_cli("eval-theta --char 0000 --z1 2i --z2 2i --zf 0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "restricted sum:"));
    CHECK(contains(r.out, "pulled-back sum:"));
    CHECK(contains(r.out, "within tolerance: yes"));
    const std::string diff = line_value(r.out, "difference:");
    REQUIRE(!diff.empty());
    CHECK(std::stod(diff) < 1e-8);
}

TEST_CASE("eval-theta sample set stays below tolerance") {
    const RunResult r = run_cli("eval-theta --sample 5 --bound 5");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "all below tolerance: yes"));
}

TEST_CASE("eval-theta rejects a boundary point with exit 4") {
    const RunResult r = run_cli(
        "eval-theta --char 0000 --z1 i --z2 i --zf i,0,0,0,0,0,0,0");
    CHECK(r.code == 4);
    CHECK(contains(r.out, "outside the tube domain"));
}

TEST_CASE("malformed arguments exit with code 3") {
    CHECK(run_cli("eval-theta --char zzzz --z1 2i --z2 2i --zf 0").code == 3);
    CHECK(run_cli("eval-theta --char 0 --z1 bogus --z2 2i --zf 0").code == 3);
    CHECK(run_cli("eval-theta --char 0 --z1 2i --z2 2i --zf 1,2").code == 3);
    CHECK(run_cli("eval-theta --char 0 --z1 2i --z2 2i").code == 3);
    CHECK(run_cli("verify --suite bogus").code == 3);
    CHECK(run_cli("--bogus-flag verify").code == 3);
    CHECK(run_cli("").code == 3);
}

TEST_CASE("report is deterministic and embeds the configuration hash") {
    const RunResult r1 = run_cli("report");
    const RunResult r2 = run_cli("report");
    CHECK(r1.code == 0);
    CHECK(r1.out == r2.out);
    CHECK(contains(r1.out, "config_hash"));
    CHECK(contains(r1.out, "\"isotropic_nonzero\": 2079"));
    CHECK(contains(r1.out, "\"cusp_rows\": 2047"));

    // The printed report is valid JSON with the documented field order.
    const auto j = nlohmann::ordered_json::parse(r1.out);
    auto it = j.begin();
    CHECK(it.key() == "command");
    ++it;
    CHECK(it.key() == "config_hash");
    CHECK(j["counts"]["norm_one_shell"] == 240);
    CHECK(j["counts"]["norm_two_shell"] == 2160);
    CHECK(j["generator_battery"] == 19);
}

TEST_CASE("help exits zero") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("verify --help").code == 0);
}
