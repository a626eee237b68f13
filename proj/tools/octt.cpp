// Command-line front end: verification suites, cusp-matrix construction,
// rank certification, and theta evaluation, driven by a JSON configuration.
//
// Exit codes: 0 success, 1 verification failure, 2 I/O failure,
// 3 bad arguments, 4 invalid mathematical input.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "octt/check.hpp"
#include "octt/config.hpp"
#include "octt/cusps.hpp"
#include "octt/digest.hpp"
#include "octt/exactla.hpp"
#include "octt/linalg.hpp"
#include "octt/octave.hpp"
#include "octt/representation.hpp"
#include "octt/siegel.hpp"
#include "octt/spin4.hpp"
#include "octt/theta.hpp"

namespace {

using namespace octt;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitVerify = 1;
constexpr int kExitIo = 2;
constexpr int kExitArgs = 3;
constexpr int kExitMath = 4;

// ---------------------------------------------------------------------------
// Input parsing helpers.
// ---------------------------------------------------------------------------

// "a+bi" with optional real or imaginary part: "2", "-1.5", "i", "-i",
// "2i", "1+2i", "0.5-1e-3i".  Errors on anything else.
Cplx parse_complex(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    DOMAIN_CHECK(!s.empty());

    const auto parse_real = [](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0; // bare "i" coefficient
        if (t == "-") return -1.0;
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &pos);
        } catch (const std::exception&) {
            throw std::domain_error("malformed number: " + t);
        }
        DOMAIN_CHECK(pos == t.size());
        return v;
    };

    // Split position: a sign that is neither leading nor part of an
    // exponent starts the second summand.
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] != '+' && s[i] != '-') continue;
        const char prev = s[i - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = i;
        break;
    }

    if (split == std::string::npos) {
        if (s.back() == 'i')
            return Cplx(0.0, parse_real(s.substr(0, s.size() - 1)));
        return Cplx(parse_real(s), 0.0);
    }
    const std::string head = s.substr(0, split);
    const std::string tail = s.substr(split);
    DOMAIN_CHECK(tail.back() == 'i'); // real part must come first
    DOMAIN_CHECK(head.back() != 'i');
    return Cplx(parse_real(head),
                parse_real(tail.substr(0, tail.size() - 1)));
}

// Octave coordinates: "0" for the zero octave, otherwise exactly eight
// comma-separated complex numbers (e-coordinates).
COctave parse_octave(const std::string& raw) {
    COctave z;
    if (raw == "0") return z;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : raw) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    DOMAIN_CHECK(parts.size() == 8);
    for (int k = 0; k < 8; ++k) z.e[k] = parse_complex(parts[k]);
    return z;
}

// Characteristic: up to four hex digits, value below 2^16.
std::uint16_t parse_characteristic(const std::string& raw) {
    std::string s = raw;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    DOMAIN_CHECK(!s.empty() && s.size() <= 4);
    unsigned v = 0;
    for (char c : s) {
        const char lc = char(std::tolower(static_cast<unsigned char>(c)));
        DOMAIN_CHECK(std::isxdigit(static_cast<unsigned char>(lc)));
        v = v * 16 +
            unsigned(lc <= '9' ? lc - '0' : 10 + lc - 'a');
    }
    return std::uint16_t(v);
}

// ---------------------------------------------------------------------------
// JSON rendering helpers (stable field order throughout).
// ---------------------------------------------------------------------------

ordered_json complex_json(Cplx v) {
    return ordered_json::array({v.real(), v.imag()});
}

ordered_json point_json(const OrthPoint& z) {
    ordered_json j;
    j["z1"] = complex_json(z.z1);
    j["z2"] = complex_json(z.z2);
    ordered_json zf = ordered_json::array();
    for (int k = 0; k < 8; ++k) zf.push_back(complex_json(z.zf.e[k]));
    j["zf"] = zf;
    return j;
}

ordered_json spec_json(const GeneratorSpec& g) {
    ordered_json j;
    switch (g.kind) {
    case GeneratorSpec::Kind::inversion: j["kind"] = "inversion"; break;
    case GeneratorSpec::Kind::translation_upper:
        j["kind"] = "translation_upper";
        break;
    case GeneratorSpec::Kind::translation_lower:
        j["kind"] = "translation_lower";
        break;
    }
    j["s1"] = g.s1;
    j["s2"] = g.s2;
    j["h"] = g.h.f;
    return j;
}

std::string format_complex(Cplx v) {
    std::ostringstream os;
    os << std::setprecision(15) << v.real();
    os << (v.imag() < 0 ? " - " : " + ") << std::setprecision(15)
       << std::fabs(v.imag()) << "i";
    return os.str();
}

// ---------------------------------------------------------------------------
// Check-list plumbing shared by the verify suites.
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = true;
    ordered_json detail; // counterexample or headline numbers
};

void print_checks(const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks) {
        std::cout << c.name << ": " << (c.pass ? "pass" : "fail") << "\n";
        if (!c.pass && !c.detail.is_null())
            std::cout << "  counterexample: " << c.detail.dump() << "\n";
    }
}

bool all_pass(const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

ordered_json checks_json(const std::vector<CheckResult>& checks) {
    ordered_json arr = ordered_json::array();
    for (const CheckResult& c : checks) {
        ordered_json j;
        j["name"] = c.name;
        j["status"] = c.pass ? "pass" : "fail";
        if (!c.detail.is_null()) j["detail"] = c.detail;
        arr.push_back(j);
    }
    return arr;
}

IntegralOctave random_integral(std::mt19937_64& rng, long box) {
    std::uniform_int_distribution<long> d(-box, box);
    IntegralOctave x;
    for (int i = 0; i < 8; ++i) x.f[i] = d(rng);
    return x;
}

// ---------------------------------------------------------------------------
// Suite: algebra (octave table, integral order, lattice shells).
// ---------------------------------------------------------------------------

std::vector<CheckResult> suite_algebra(const Config& cfg) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(cfg.seed);

    {
        CheckResult c{"unit and basis product laws", true, {}};
        const Octave one = Octave::unit();
        for (int i = 0; i < 8 && c.pass; ++i) {
            const Octave ei = Octave::basis(i);
            if (one * ei != ei || ei * one != ei) {
                c.pass = false;
                c.detail = ordered_json{{"basis", i}};
            }
        }
        for (int i = 1; i < 8 && c.pass; ++i) {
            const Octave ei = Octave::basis(i);
            if (ei * ei != -one) {
                c.pass = false;
                c.detail = ordered_json{{"square_of", i}};
            }
            for (int j = 1; j < 8 && c.pass; ++j) {
                if (i == j) continue;
                const Octave ej = Octave::basis(j);
                if (ei * ej != -(ej * ei)) {
                    c.pass = false;
                    c.detail = ordered_json{{"anticommute", {i, j}}};
                }
            }
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"conjugation anti-automorphism", true, {}};
        for (int t = 0; t < 200 && c.pass; ++t) {
            const IntegralOctave a = random_integral(rng, 3);
            const IntegralOctave b = random_integral(rng, 3);
            const Octave x = a.to_octave(), y = b.to_octave();
            if (conj(x * y) != conj(y) * conj(x) || conj(conj(x)) != x) {
                c.pass = false;
                c.detail = ordered_json{{"a", a.f}, {"b", b.f}};
            }
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"N(xy)=N(x)N(y)", true, {}};
        long pairs = 0;
        for (int t = 0; t < 10000 && c.pass; ++t) {
            const IntegralOctave a = random_integral(rng, 3);
            const IntegralOctave b = random_integral(rng, 3);
            if (inorm(a * b) != inorm(a) * inorm(b)) {
                c.pass = false;
                c.detail = ordered_json{{"a", a.f}, {"b", b.f}};
            }
            ++pairs;
        }
        if (c.pass) c.detail = ordered_json{{"pairs", pairs}};
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"trace pairing symmetry and triple-trace cyclicity",
                      true,
                      {}};
        for (int t = 0; t < 100 && c.pass; ++t) {
            const IntegralOctave a = random_integral(rng, 3);
            const IntegralOctave b = random_integral(rng, 3);
            const IntegralOctave d = random_integral(rng, 3);
            const long abc = itriple_trace(a, b, d);
            if (ipair(a, b) != ipair(b, a) ||
                abc != itriple_trace(b, d, a) ||
                abc != itriple_trace(d, a, b)) {
                c.pass = false;
                c.detail =
                    ordered_json{{"a", a.f}, {"b", b.f}, {"c", d.f}};
            }
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"gram matrix even unimodular positive definite", true,
                      {}};
        const IntMat& s = gram_s();
        RatMat sq(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) sq(i, j) = Rat(s(i, j));
        for (int i = 0; i < 8 && c.pass; ++i) {
            if (s(i, i) % 2 != 0) {
                c.pass = false;
                c.detail = ordered_json{{"odd_diagonal", i}};
            }
        }
        for (int k = 1; k <= 8 && c.pass; ++k) {
            RatMat minor(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) minor(i, j) = sq(i, j);
            const Rat d = det(minor);
            if (!(d > 0)) {
                c.pass = false;
                c.detail = ordered_json{{"nonpositive_minor", k}};
            }
            if (k == 8 && d != 1) {
                c.pass = false;
                c.detail = ordered_json{{"determinant", to_string(d)}};
            }
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"norm shells 240 and 2160", true, {}};
        const std::size_t n1 = norm_shell(1).size();
        const std::size_t n2 = norm_shell(2).size();
        c.pass = n1 == 240 && n2 == 2160;
        c.detail = ordered_json{{"norm_one", n1}, {"norm_two", n2}};
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"integral product closure", true, {}};
        for (int t = 0; t < 200 && c.pass; ++t) {
            const IntegralOctave a = random_integral(rng, 3);
            const IntegralOctave b = random_integral(rng, 3);
            const Octave prod = a.to_octave() * b.to_octave();
            if (!is_integral(prod) || (a * b).to_octave() != prod) {
                c.pass = false;
                c.detail = ordered_json{{"a", a.f}, {"b", b.f}};
            }
        }
        out.push_back(std::move(c));
    }

    return out;
}

// ---------------------------------------------------------------------------
// Suite: embedding (spin generators, symplectic images, calibration,
// equivariance).
// ---------------------------------------------------------------------------

GeneratorSpec doubled(const GeneratorSpec& g) {
    GeneratorSpec d = g;
    d.s1 *= 2;
    d.s2 *= 2;
    d.h = d.h + d.h;
    return d;
}

std::vector<CheckResult> suite_embedding(const Config& cfg,
                                         const std::string& calibration,
                                         std::string* resolved) {
    std::vector<CheckResult> out;
    const std::vector<GeneratorSpec> battery = generator_battery();

    {
        CheckResult c{"generator spin membership and unit determinant", true,
                      {}};
        for (const GeneratorSpec& g : battery) {
            const CPlusMatrix4 m = build_generator(g);
            auto [ok, o] = is_spin(m);
            if (!ok || det(*o) != 1) {
                c.pass = false;
                c.detail = spec_json(g);
                break;
            }
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"hermitian symplectic relation", true, {}};
        for (const GeneratorSpec& g : battery) {
            if (!is_hermitian_symplectic(build_generator(g))) {
                c.pass = false;
                c.detail = spec_json(g);
                break;
            }
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"symplectic images in the integral theta group", true,
                      {}};
        for (const GeneratorSpec& g : battery) {
            const RatMat j = embed_j(build_generator(g));
            const LevelReport rep = classify_level(j);
            if (!is_integral_matrix(j) || !is_symplectic_32(j) ||
                !rep.integral_symplectic || !rep.igusa_12) {
                c.pass = false;
                c.detail = spec_json(g);
                break;
            }
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"doubled generators in the level-two theta group", true,
                      {}};
        for (const GeneratorSpec& g : battery) {
            if (g.kind == GeneratorSpec::Kind::inversion) continue;
            const CPlusMatrix4 m = build_generator(doubled(g));
            const LevelReport rep = classify_level(embed_j(m));
            if (!is_identity_mod2_order(m) || rep.principal_level < 2 ||
                !rep.igusa_24) {
                c.pass = false;
                c.detail = spec_json(doubled(g));
                break;
            }
        }
        out.push_back(std::move(c));
    }

    Chart chart = Chart::minus_conj;
    {
        CheckResult c{"chart calibration", true, {}};
        if (calibration == "auto") {
            try {
                chart = discover_calibration(cfg.seed, cfg.tolerances.matrix);
                c.detail = ordered_json{{"discovered", chart_name(chart)}};
            } catch (const std::exception& e) {
                c.pass = false;
                c.detail = ordered_json{{"error", e.what()}};
            }
        } else {
            chart = chart_from_name(calibration);
            c.detail = ordered_json{{"forced", calibration}};
        }
        if (resolved != nullptr) *resolved = chart_name(chart);
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"generator equivariance residual", true, {}};
        std::mt19937_64 rng(cfg.seed);
        std::vector<OrthPoint> points;
        for (int i = 0; i < 12; ++i) points.push_back(sample_point(rng));
        double worst = 0.0;
        long pairs = 0;
        for (const GeneratorSpec& g : battery) {
            const GeneratorImages images = generator_images(g);
            for (const OrthPoint& z : points) {
                const double r = equivariance_residual(images, z, chart);
                ++pairs;
                worst = std::max(worst, r);
                if (r >= cfg.tolerances.matrix && c.pass) {
                    c.pass = false;
                    c.detail = ordered_json{{"generator", spec_json(g)},
                                            {"point", point_json(z)},
                                            {"residual", r}};
                }
            }
        }
        if (c.pass)
            c.detail = ordered_json{{"pairs", pairs},
                                    {"max_residual", worst},
                                    {"tolerance", cfg.tolerances.matrix}};
        out.push_back(std::move(c));
    }

    return out;
}

// ---------------------------------------------------------------------------
// Suite: cusps (isotropic counts, matrix determinism, entry spot checks).
// ---------------------------------------------------------------------------

std::vector<CheckResult> suite_cusps(const Config& cfg, int threads) {
    std::vector<CheckResult> out;

    {
        CheckResult c{"isotropic class counts 2079 and 2080", true, {}};
        const std::size_t nonzero = enumerate_isotropic().size();
        c.pass = nonzero == 2079 &&
                 nonzero + 1 == (std::size_t(1) << 11) + (std::size_t(1) << 5);
        c.detail = ordered_json{{"nonzero", nonzero},
                                {"with_zero", nonzero + 1}};
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"cusp row enumeration 2047", true, {}};
        const auto& rows = enumerate_cusp_R();
        c.pass = rows.size() == 2047;
        for (std::size_t i = 0; i < rows.size() && c.pass; ++i) {
            const bool want_zero_two = i < 1024;
            if ((rows[i].type == HermitianR::EntryType::zero_two) !=
                want_zero_two) {
                c.pass = false;
                c.detail = ordered_json{{"row", i}};
            }
        }
        if (c.pass) c.detail = ordered_json{{"rows", rows.size()}};
        out.push_back(std::move(c));
    }

    CuspMatrix m;
    {
        CheckResult c{"matrix determinism across thread counts", true, {}};
        m = build_cusp_matrix(threads > 0 ? threads : 1);
        const CuspMatrix m2 = build_cusp_matrix(2);
        const std::string h1 = sha256_hex(m.entries);
        const std::string h2 = sha256_hex(m2.entries);
        c.pass = m.rows == 2047 && m.cols == 65536 && h1 == h2 &&
                 m.denominators == m2.denominators;
        c.detail = ordered_json{
            {"rows", m.rows}, {"cols", m.cols}, {"entries_sha256", h1}};
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"denominators nonzero with full-sum unit row", true, {}};
        for (std::size_t i = 0; i < m.denominators.size() && c.pass; ++i) {
            if (m.denominators[i] == 0) {
                c.pass = false;
                c.detail = ordered_json{{"row", i}};
            }
        }
        if (c.pass && m.denominators[0] != 65536) {
            c.pass = false;
            c.detail = ordered_json{{"row0", m.denominators[0]}};
        }
        out.push_back(std::move(c));
    }

    {
        CheckResult c{"entry spot checks against direct recomputation", true,
                      {}};
        std::mt19937_64 rng(cfg.seed);
        const auto& rows = enumerate_cusp_R();
        std::uniform_int_distribution<std::uint32_t> dr(0, m.rows - 1);
        std::uniform_int_distribution<std::uint32_t> dc(0, m.cols - 1);
        for (int t = 0; t < 200 && c.pass; ++t) {
            const std::uint32_t r = dr(rng), col = dc(rng);
            if (m.at(r, col) !=
                numerator_entry(rows[r], std::uint16_t(col))) {
                c.pass = false;
                c.detail = ordered_json{{"row", r}, {"col", col}};
            }
        }
        out.push_back(std::move(c));
    }

    return out;
}

// ---------------------------------------------------------------------------
// Command state shared by the subcommands.
// ---------------------------------------------------------------------------

struct Options {
    std::string config_path = "octt.json";
    bool config_given = false;
    int threads = 0;
    std::string json_path;

    Config cfg;
};

void write_json_report(const Options& opt, const ordered_json& report) {
    if (opt.json_path.empty()) return;
    std::ofstream os(opt.json_path);
    DOMAIN_CHECK(bool(os));
    os << report.dump(2) << "\n";
    DOMAIN_CHECK(bool(os));
}

ordered_json report_skeleton(const std::string& command, const Options& opt) {
    ordered_json j;
    j["command"] = command;
    j["config_hash"] = config_hash(opt.cfg);
    j["config"] = ordered_json::parse(config_to_json(opt.cfg));
    return j;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(Options& opt, const std::string& suite,
               const std::string& calibration_flag) {
    std::cout << "config_hash: " << config_hash(opt.cfg) << "\n";

    // The command-line flag overrides the configured chart; "auto" in both
    // places triggers discovery.
    const std::string calibration =
        calibration_flag != "auto" ? calibration_flag : opt.cfg.calibration;

    ordered_json report = report_skeleton("verify", opt);
    report["suite"] = suite;

    std::vector<CheckResult> checks;
    std::string resolved;
    const bool run_algebra = suite == "algebra" || suite == "all";
    const bool run_embedding = suite == "embedding" || suite == "all";
    const bool run_cusps = suite == "cusps" || suite == "all";

    if (run_algebra) {
        std::cout << "[suite algebra]\n";
        auto part = suite_algebra(opt.cfg);
        print_checks(part);
        checks.insert(checks.end(), part.begin(), part.end());
    }
    if (run_embedding) {
        std::cout << "[suite embedding]\n";
        auto part = suite_embedding(opt.cfg, calibration, &resolved);
        print_checks(part);
        checks.insert(checks.end(), part.begin(), part.end());
        std::cout << "calibration: " << resolved << "\n";
        report["calibration"] = resolved;
    }
    if (run_cusps) {
        std::cout << "[suite cusps]\n";
        auto part = suite_cusps(opt.cfg, opt.threads);
        print_checks(part);
        checks.insert(checks.end(), part.begin(), part.end());
    }

    const bool ok = all_pass(checks);
    std::size_t passed = 0;
    for (const CheckResult& c : checks) passed += c.pass ? 1 : 0;
    std::cout << "verify " << suite << ": " << passed << "/" << checks.size()
              << " checks passed\n";

    // Cache a freshly discovered calibration in the configuration file so
    // later commands (and re-runs) share one fixed chart.
    if (ok && run_embedding && calibration == "auto" &&
        opt.cfg.calibration == "auto" && !resolved.empty()) {
        opt.cfg.calibration = resolved;
        report["config"] = ordered_json::parse(config_to_json(opt.cfg));
        report["config_hash"] = config_hash(opt.cfg);
        try {
            save_config(opt.cfg, opt.config_path);
            std::cout << "calibration cached to " << opt.config_path << "\n";
        } catch (const std::exception& e) {
            std::cerr << "warning: could not cache calibration: " << e.what()
                      << "\n";
        }
    }

    report["checks"] = checks_json(checks);
    report["passed"] = ok;
    write_json_report(opt, report);
    return ok ? kExitPass : kExitVerify;
}

// ---------------------------------------------------------------------------
// cusp-matrix
// ---------------------------------------------------------------------------

int cmd_cusp_matrix(const Options& opt, const std::string& out_flag) {
    std::cout << "config_hash: " << config_hash(opt.cfg) << "\n";
    const std::string path =
        out_flag.empty() ? opt.cfg.matrix_path : out_flag;

    const CuspMatrix m = build_cusp_matrix(opt.threads);
    std::string hash;
    try {
        write_cusp_matrix(path, m);
        hash = sha256_file(path);
        // Round-trip read-back guards against torn writes.
        const CuspMatrix back = read_cusp_matrix(path);
        LOGIC_CHECK(back.entries == m.entries &&
                    back.denominators == m.denominators);
    } catch (const std::exception& e) {
        std::cerr << "error: cannot write matrix file '" << path
                  << "': " << e.what() << "\n";
        return kExitIo;
    }

    std::cout << "path: " << path << "\n";
    std::cout << "rows: " << m.rows << "\n";
    std::cout << "columns: " << m.cols << "\n";
    std::cout << "isotropic classes: " << enumerate_isotropic().size()
              << "\n";
    std::cout << "sha256: " << hash << "\n";

    ordered_json report = report_skeleton("cusp-matrix", opt);
    report["path"] = path;
    report["rows"] = m.rows;
    report["cols"] = m.cols;
    report["isotropic_classes"] = enumerate_isotropic().size();
    report["sha256"] = hash;
    write_json_report(opt, report);
    return kExitPass;
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

int cmd_rank(const Options& opt, const std::string& matrix_flag,
             const std::string& primes_flag) {
    std::cout << "config_hash: " << config_hash(opt.cfg) << "\n";

    std::vector<std::uint64_t> primes = opt.cfg.primes;
    if (!primes_flag.empty()) {
        primes.clear();
        std::stringstream ss(primes_flag);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t pos = 0;
                const unsigned long v = std::stoul(tok, &pos);
                DOMAIN_CHECK(pos == tok.size());
                primes.push_back(v);
            } catch (const std::exception&) {
                std::cerr << "error: malformed prime '" << tok << "'\n";
                return kExitArgs;
            }
        }
    }
    for (const std::uint64_t p : primes) {
        if (p >= (std::uint64_t(1) << 31) || p % 4 != 1 || !is_prime_u64(p)) {
            std::cerr << "error: " << p
                      << " is not a word-sized prime congruent to 1 mod 4\n";
            return kExitArgs;
        }
    }
    if (primes.empty()) {
        std::cerr << "error: no primes given\n";
        return kExitArgs;
    }

    CuspMatrix m;
    std::string source;
    if (!matrix_flag.empty()) {
        try {
            m = read_cusp_matrix(matrix_flag);
            source = matrix_flag;
        } catch (const std::exception& e) {
            std::cerr << "error: cannot read matrix file '" << matrix_flag
                      << "': " << e.what() << "\n";
            return kExitIo;
        }
    } else if (std::filesystem::exists(opt.cfg.matrix_path)) {
        try {
            m = read_cusp_matrix(opt.cfg.matrix_path);
            source = opt.cfg.matrix_path;
        } catch (const std::exception& e) {
            std::cerr << "error: cannot read matrix file '"
                      << opt.cfg.matrix_path << "': " << e.what() << "\n";
            return kExitIo;
        }
    } else {
        m = build_cusp_matrix(opt.threads);
        source = "(built in memory)";
    }
    std::cout << "matrix: " << source << " (" << m.rows << " x " << m.cols
              << ")\n";

    const RankCertificate cert = certify_rank(m, primes, opt.threads, true);
    for (std::size_t i = 0; i < cert.primes.size(); ++i)
        std::cout << "rank mod " << cert.primes[i] << ": " << cert.ranks[i]
                  << "\n";
    std::cout << "agreed rank: " << cert.agreed_rank << "\n";
    std::cout << "pivot columns agree: " << (cert.pivots_agree ? "yes" : "no")
              << "\n";
    std::cout << "distinct columns: " << cert.distinct_columns << " of "
              << cert.total_columns << "\n";
    std::cout << "denominator vector in span: "
              << (cert.denominator_in_span ? "yes" : "no") << "\n";
    std::cout << std::fixed << std::setprecision(3)
              << "rank seconds: " << cert.rank_seconds
              << "\nspan seconds: " << cert.span_seconds << "\n";
    std::cout.unsetf(std::ios::fixed);

    ordered_json report = report_skeleton("rank", opt);
    report["matrix"] = source;
    report["rows"] = m.rows;
    report["cols"] = m.cols;
    report["certificate"] = ordered_json::parse(certificate_json(cert));
    const bool ok = cert.agreed_rank >= 0 && cert.pivots_agree &&
                    (!cert.denominator_checked || cert.denominator_in_span);
    report["passed"] = ok;
    write_json_report(opt, report);
    if (!ok) {
        std::cerr << "error: rank certification failed (disagreement across "
                     "primes or span miss)\n";
        return kExitVerify;
    }
    return kExitPass;
}

// ---------------------------------------------------------------------------
// eval-theta
// ---------------------------------------------------------------------------

ordered_json theta_json(const ThetaValue& v) {
    ordered_json j;
    j["value"] = complex_json(v.value);
    j["terms"] = v.terms;
    j["tail_bound"] = v.tail;
    return j;
}

int eval_one(const Options& opt, std::uint16_t chi, const OrthPoint& z,
             const TruncationBound& bound, double* difference) {
    const CMat big = j_point(z);
    const ThetaValue restricted = theta_restricted(chi, z, bound);
    const ThetaValue pulled = theta_siegel(chi, big, bound);
    const double diff = std::abs(restricted.value - pulled.value);
    if (difference != nullptr) *difference = diff;

    std::cout << "characteristic: 0x" << std::hex << std::setw(4)
              << std::setfill('0') << chi << std::dec << std::setfill(' ')
              << "\n";
    std::cout << "restricted sum:  " << format_complex(restricted.value)
              << "  (" << restricted.terms << " terms, tail <= "
              << std::setprecision(3) << std::scientific << restricted.tail
              << ")\n";
    std::cout << "pulled-back sum: " << format_complex(pulled.value) << "  ("
              << pulled.terms << " terms, tail <= " << std::setprecision(3)
              << std::scientific << pulled.tail << ")\n";
    std::cout << "difference: " << std::setprecision(3) << std::scientific
              << diff << "\n";
    std::cout.unsetf(std::ios::scientific);
    const bool ok = diff < opt.cfg.tolerances.cross_sum;
    std::cout << "within tolerance: " << (ok ? "yes" : "no") << "\n";

    ordered_json report = report_skeleton("eval-theta", opt);
    {
        std::ostringstream hexchi;
        hexchi << "0x" << std::hex << std::setw(4) << std::setfill('0')
               << chi;
        report["characteristic"] = hexchi.str();
    }
    report["point"] = point_json(z);
    report["bound"] = ordered_json{{"max_norm1", bound.max_norm1},
                                   {"max_norm2", bound.max_norm2}};
    report["restricted"] = theta_json(restricted);
    report["siegel"] = theta_json(pulled);
    report["difference"] = diff;
    report["within_tolerance"] = ok;
    write_json_report(opt, report);
    return kExitPass;
}

int eval_samples(const Options& opt, long count, const TruncationBound& bound) {
    std::cout << "config_hash: " << config_hash(opt.cfg) << "\n";
    std::mt19937_64 rng(opt.cfg.seed);
    bool ok = true;
    double worst = 0.0;
    ordered_json rows = ordered_json::array();
    std::cout << "sample  characteristic  difference\n";
    for (long i = 0; i < count; ++i) {
        const auto chi = std::uint16_t(rng() & 0xffff);
        const OrthPoint z = sample_point(rng);
        const ThetaValue restricted = theta_restricted(chi, z, bound);
        const ThetaValue pulled = theta_siegel(chi, j_point(z), bound);
        const double diff = std::abs(restricted.value - pulled.value);
        worst = std::max(worst, diff);
        ok = ok && diff < opt.cfg.tolerances.cross_sum;
        std::cout << std::setw(6) << i << "  0x" << std::hex << std::setw(4)
                  << std::setfill('0') << chi << std::dec
                  << std::setfill(' ') << "          " << std::setprecision(3)
                  << std::scientific << diff << "\n";
        std::cout.unsetf(std::ios::scientific);
        rows.push_back(ordered_json{{"characteristic", chi},
                                    {"difference", diff}});
    }
    std::cout << "max difference: " << std::setprecision(3)
              << std::scientific << worst << "\n";
    std::cout.unsetf(std::ios::scientific);
    std::cout << "all below tolerance: " << (ok ? "yes" : "no") << "\n";

    ordered_json report = report_skeleton("eval-theta", opt);
    report["samples"] = rows;
    report["max_difference"] = worst;
    report["passed"] = ok;
    write_json_report(opt, report);
    return ok ? kExitPass : kExitVerify;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const Options& opt) {
    ordered_json report = report_skeleton("report", opt);
    ordered_json counts;
    counts["isotropic_nonzero"] = enumerate_isotropic().size();
    counts["isotropic_with_zero"] = enumerate_isotropic().size() + 1;
    counts["cusp_rows"] = enumerate_cusp_R().size();
    counts["characteristics"] = 1 << 16;
    counts["norm_one_shell"] = norm_shell(1).size();
    counts["norm_two_shell"] = norm_shell(2).size();
    report["counts"] = counts;
    report["generator_battery"] = generator_battery().size();
    std::cout << report.dump(2) << "\n";
    write_json_report(opt, report);
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    Options opt;
    CLI::App app{"Octave theta toolkit: verification suites, cusp matrix "
                 "construction, rank certificates, theta evaluation"};
    app.option_defaults()->always_capture_default();
    app.add_option("--config", opt.config_path,
                   "Configuration file (JSON); created by verify when the "
                   "calibration is first discovered");
    app.add_option("--threads", opt.threads,
                   "Worker threads (0 = environment variable OCTT_THREADS, "
                   "else hardware count)");
    app.add_option("--json", opt.json_path,
                   "Write the machine-readable report to this path");

    std::string suite = "all";
    std::string calibration_flag = "auto";
    CLI::App* verify = app.add_subcommand(
        "verify", "Run invariant suites and report each check");
    verify->add_option("--suite", suite, "algebra | embedding | cusps | all")
        ->check(CLI::IsMember({"algebra", "embedding", "cusps", "all"}));
    verify
        ->add_option("--calibration", calibration_flag,
                     "Chart calibration: auto (discover), identity, "
                     "minus-conj")
        ->check(CLI::IsMember({"auto", "identity", "minus-conj"}));

    std::string out_path;
    CLI::App* cusp = app.add_subcommand(
        "cusp-matrix", "Build the cusp value matrix and write it to disk");
    cusp->add_option("--out", out_path, "Output path (default from config)");

    std::string matrix_flag, primes_flag;
    CLI::App* rank = app.add_subcommand(
        "rank", "Certify the rank of the cusp matrix over prime fields");
    rank->add_option("--matrix", matrix_flag, "Matrix file to load");
    rank->add_option("--primes", primes_flag,
                     "Comma-separated primes, each = 1 (mod 4)");

    std::string char_flag, z1_flag, z2_flag, zf_flag;
    long bound_flag = -1, sample_flag = 0;
    CLI::App* evalt = app.add_subcommand(
        "eval-theta",
        "Evaluate the restricted theta sum and its pulled-back counterpart");
    evalt->add_option("--char", char_flag,
                      "Characteristic, up to four hex digits");
    evalt->add_option("--z1", z1_flag, "First coordinate, a+bi");
    evalt->add_option("--z2", z2_flag, "Second coordinate, a+bi");
    evalt->add_option("--zf", zf_flag,
                      "Octave coordinate: 0, or eight comma-separated "
                      "complex numbers");
    evalt->add_option("--bound", bound_flag,
                      "Truncation norm bound for both components");
    evalt->add_option("--sample", sample_flag,
                      "Evaluate this many seeded random samples instead");

    CLI::App* report = app.add_subcommand(
        "report", "Print the configuration and headline counts as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitArgs;
    }

    // Resolve the configuration: an existing file is loaded; a missing file
    // means defaults (and gives verify a place to cache the calibration).
    try {
        if (std::filesystem::exists(opt.config_path)) {
            opt.cfg = load_config(opt.config_path);
        } else {
            validate_config(opt.cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: cannot load configuration '" << opt.config_path
                  << "': " << e.what() << "\n";
        return kExitIo;
    }

    try {
        if (verify->parsed()) return cmd_verify(opt, suite, calibration_flag);
        if (cusp->parsed()) return cmd_cusp_matrix(opt, out_path);
        if (rank->parsed()) return cmd_rank(opt, matrix_flag, primes_flag);
        if (evalt->parsed()) {
            TruncationBound bound = opt.cfg.truncation;
            if (bound_flag > 0) bound = TruncationBound{bound_flag, bound_flag};
            if (sample_flag > 0) return eval_samples(opt, sample_flag, bound);
            if (char_flag.empty() || z1_flag.empty() || z2_flag.empty() ||
                zf_flag.empty()) {
                std::cerr << "error: eval-theta needs --char, --z1, --z2, "
                             "--zf (or --sample N)\n";
                return kExitArgs;
            }
            std::uint16_t chi = 0;
            OrthPoint z;
            try {
                chi = parse_characteristic(char_flag);
                z.z1 = parse_complex(z1_flag);
                z.z2 = parse_complex(z2_flag);
                z.zf = parse_octave(zf_flag);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitArgs;
            }
            if (!in_h10(z)) {
                std::cerr << "error: point lies outside the tube domain\n";
                return kExitMath;
            }
            std::cout << "config_hash: " << config_hash(opt.cfg) << "\n";
            return eval_one(opt, chi, z, bound, nullptr);
        }
        if (report->parsed()) return cmd_report(opt);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }

    std::cerr << app.help();
    return kExitArgs;
}
