#ifndef OCTT_CONFIG_HPP
#define OCTT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "octt/theta.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// Runtime configuration shared by every command of the front-end binary.
// A configuration is a plain value: primes for the rank certificate,
// truncation bounds and tolerances for the numerical theta layer, the chart
// calibration (either a fixed choice or "auto", resolved once by the
// embedding verification and cached), the sampling seed, and file paths.
// Every command is deterministic given a configuration, so reports embed
// the SHA-256 hash of its canonical JSON rendering.
// ---------------------------------------------------------------------------

struct Tolerances {
    double cross_sum = 1e-8; // |restricted - pulled-back| on sample points
    double matrix = 1e-9;    // equivariance residual per (generator, point)
};

struct Config {
    std::vector<std::uint64_t> primes{10009, 1000033};
    TruncationBound truncation{}; // both norm bounds default to 6
    Tolerances tolerances{};
    std::string calibration = "auto"; // "auto" | "identity" | "minus-conj"
    std::uint64_t seed = 2026;
    std::string matrix_path = "cusp_matrix.octt";

    bool operator==(const Config& o) const;
};

// Validation used by every entry point: primes are prime, = 1 (mod 4) and
// word-sized; tolerances and truncation bounds positive; calibration is one
// of the three admissible names.  Errors on violation.
void validate_config(const Config& c);

// Canonical JSON rendering with a fixed field order; parse of the same.
// to_json always renders the full record; from_json accepts a full record
// and errors on unknown fields, wrong types, or invariant violations.
std::string config_to_json(const Config& c);
Config config_from_json(const std::string& text);

// File round trip.  load errors when the file is missing or malformed.
Config load_config(const std::string& path);
void save_config(const Config& c, const std::string& path);

// SHA-256 of the canonical JSON rendering.
std::string config_hash(const Config& c);

// Chart <-> name ("identity" / "minus-conj"); parse errors on other input.
std::string chart_name(Chart chart);
Chart chart_from_name(const std::string& name);

} // namespace octt

#endif
