#include "octt/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "octt/check.hpp"
#include "octt/digest.hpp"
#include "octt/exactla.hpp"

namespace octt {

using ordered_json = nlohmann::ordered_json;

bool Config::operator==(const Config& o) const {
    return primes == o.primes &&
           truncation.max_norm1 == o.truncation.max_norm1 &&
           truncation.max_norm2 == o.truncation.max_norm2 &&
           tolerances.cross_sum == o.tolerances.cross_sum &&
           tolerances.matrix == o.tolerances.matrix &&
           calibration == o.calibration && seed == o.seed &&
           matrix_path == o.matrix_path;
}

void validate_config(const Config& c) {
    DOMAIN_CHECK(!c.primes.empty());
    for (const std::uint64_t p : c.primes) {
        DOMAIN_CHECK(p < (std::uint64_t(1) << 31));
        DOMAIN_CHECK(p % 4 == 1);
        DOMAIN_CHECK(is_prime_u64(p));
    }
    DOMAIN_CHECK(c.truncation.max_norm1 > 0);
    DOMAIN_CHECK(c.truncation.max_norm2 > 0);
    DOMAIN_CHECK(c.tolerances.cross_sum > 0.0);
    DOMAIN_CHECK(c.tolerances.matrix > 0.0);
    DOMAIN_CHECK(c.calibration == "auto" || c.calibration == "identity" ||
                 c.calibration == "minus-conj");
    DOMAIN_CHECK(!c.matrix_path.empty());
}

std::string config_to_json(const Config& c) {
    ordered_json j;
    j["primes"] = c.primes;
    j["truncation"]["max_norm1"] = c.truncation.max_norm1;
    j["truncation"]["max_norm2"] = c.truncation.max_norm2;
    j["tolerances"]["cross_sum"] = c.tolerances.cross_sum;
    j["tolerances"]["matrix"] = c.tolerances.matrix;
    j["calibration"] = c.calibration;
    j["seed"] = c.seed;
    j["paths"]["matrix"] = c.matrix_path;
    return j.dump(2) + "\n";
}

Config config_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error&) {
        throw std::domain_error("configuration is not valid JSON");
    }
    static const char* kTop[] = {"primes",      "truncation", "tolerances",
                                 "calibration", "seed",       "paths"};
    DOMAIN_CHECK(j.is_object());
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : kTop) known = known || item.key() == k;
        DOMAIN_CHECK(known);
    }
    Config c;
    try {
        c.primes = j.at("primes").get<std::vector<std::uint64_t>>();
        c.truncation.max_norm1 = j.at("truncation").at("max_norm1").get<long>();
        c.truncation.max_norm2 = j.at("truncation").at("max_norm2").get<long>();
        c.tolerances.cross_sum = j.at("tolerances").at("cross_sum").get<double>();
        c.tolerances.matrix = j.at("tolerances").at("matrix").get<double>();
        c.calibration = j.at("calibration").get<std::string>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.matrix_path = j.at("paths").at("matrix").get<std::string>();
    } catch (const ordered_json::exception&) {
        throw std::domain_error("configuration record is incomplete or typed "
                                "incorrectly");
    }
    validate_config(c);
    return c;
}

Config load_config(const std::string& path) {
    std::ifstream is(path);
    DOMAIN_CHECK(bool(is));
    std::ostringstream text;
    text << is.rdbuf();
    return config_from_json(text.str());
}

void save_config(const Config& c, const std::string& path) {
    validate_config(c);
    std::ofstream os(path);
    DOMAIN_CHECK(bool(os));
    os << config_to_json(c);
    DOMAIN_CHECK(bool(os));
}

std::string config_hash(const Config& c) {
    return sha256_hex(config_to_json(c));
}

std::string chart_name(Chart chart) {
    return chart == Chart::identity ? "identity" : "minus-conj";
}

Chart chart_from_name(const std::string& name) {
    if (name == "identity") return Chart::identity;
    DOMAIN_CHECK(name == "minus-conj");
    return Chart::minus_conj;
}

} // namespace octt
