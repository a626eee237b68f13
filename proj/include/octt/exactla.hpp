#ifndef OCTT_EXACTLA_HPP
#define OCTT_EXACTLA_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "octt/cusps.hpp"
#include "octt/rational.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// Rank and span-membership engine for the cusp matrix.
//
// Entries of the matrix are the bytes 0..3 (powers of i) and 255 (undefined
// marker, treated as 0).  Ranks are computed over word-sized prime fields
// with p = 1 (mod 4), where i has an honest square root of -1; agreement of
// the rank across two such primes certifies the characteristic-zero rank
// from below, and a fraction-free Gaussian-integer elimination is available
// for small submatrices as an independent cross-check.
// ---------------------------------------------------------------------------

// Deterministic 64-bit Miller-Rabin primality test (fixed witness set).
bool is_prime_u64(std::uint64_t n);

// Prime field on machine words.  Requires p prime, p = 1 (mod 4), p < 2^31;
// mul reduces with a precomputed Barrett constant.
struct PrimeField {
    std::uint64_t p = 0;
    std::uint64_t sqrt_minus_one = 0; // the smaller of the two roots of -1
    std::uint64_t barrett = 0;        // floor(2^62 / p)

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t t = a * b; // exact below 2^62 since p < 2^31
        const std::uint64_t q =
            std::uint64_t((unsigned __int128)(t)*barrett >> 62);
        std::uint64_t r = t - q * p;
        while (r >= p) r -= p;
        return r;
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const; // a != 0
};

// Errors unless p is a prime = 1 (mod 4) in range.
PrimeField make_prime_field(std::uint64_t p);

// i^byte in the field; the undefined marker 255 maps to 0; other bytes error.
std::uint64_t entry_mod_p(std::uint8_t byte, const PrimeField& f);

// Column of the matrix reduced into the field.
std::vector<std::uint64_t> column_mod_p(const CuspMatrix& m, std::uint32_t col,
                                        const PrimeField& f);

// Exact column deduplication (hash bucket + byte-for-byte confirmation).
struct ColumnClasses {
    std::vector<std::uint32_t> rep;          // distinct columns, first-seen order
    std::vector<std::uint32_t> class_of;     // length cols
    std::vector<std::uint32_t> multiplicity; // per class
};
ColumnClasses dedupe_columns(const CuspMatrix& m);

// Incremental column-space elimination.  The basis keeps one vector per
// pivot; every stored vector is zero at all earlier pivot rows, so reducing
// in insertion order zeroes a vector at every pivot row.  Deterministic:
// pivot row = first nonzero coordinate of the fully reduced vector.
class Eliminator {
  public:
    Eliminator(const PrimeField& f, std::size_t nrows)
        : f_(f), rows_(nrows) {}

    // In-place reduction against the pivots in [from, size); records the
    // eliminated (basis index, coefficient) pairs when trace is given.
    void reduce(std::vector<std::uint64_t>& v, std::size_t from = 0,
                std::vector<std::pair<std::size_t, std::uint64_t>>* trace =
                    nullptr) const;

    // Reduce fully, then append when nonzero; true iff the rank grew.
    bool add_column(std::vector<std::uint64_t> v);

    std::size_t rank() const { return basis_.size(); }
    std::size_t rows() const { return rows_; }
    const PrimeField& field() const { return f_; }
    const std::vector<std::size_t>& pivot_rows() const { return pivots_; }
    const std::vector<std::uint64_t>& basis_vector(std::size_t k) const {
        return basis_[k];
    }

  private:
    PrimeField f_;
    std::size_t rows_;
    std::vector<std::vector<std::uint64_t>> basis_; // pivot entry scaled to 1
    std::vector<std::size_t> pivots_;
};

// Rank of the matrix over the field.  Deduped columns are processed in
// descending-multiplicity order; each batch is reduced in parallel against
// a frozen basis snapshot and inserted serially, so the result does not
// depend on threads or batch size.  threads <= 0: OCTT_THREADS env, then
// hardware count.
struct EliminationResult {
    long rank = 0;
    std::vector<std::uint32_t> pivot_columns; // original indices, pivot order
    Eliminator elim;                          // kept for span queries
};
EliminationResult rank_mod_p(const CuspMatrix& m, const PrimeField& f,
                             const ColumnClasses& classes, int threads = 0,
                             std::size_t batch = 512);
EliminationResult rank_mod_p(const CuspMatrix& m, const PrimeField& f);

// Convenience driver for loose column collections (tests, fixtures).
long rank_dense(const std::vector<std::vector<std::uint64_t>>& columns,
                const PrimeField& f);

// True iff appending the vector to the column basis would not grow the rank.
bool in_span_mod_p(std::vector<std::uint64_t> v, const Eliminator& e);
// Same for an integer vector (e.g. the per-row denominator sums).
bool in_span_mod_p(const std::vector<std::int64_t>& target,
                   const EliminationResult& run);

// Fraction-free (Bareiss) rank over the Gaussian integers of a small
// submatrix: the characteristic-zero cross-check.  Errors when the subset
// exceeds max_dim in either direction.
long rank_char0_small(const CuspMatrix& m,
                      const std::vector<std::uint32_t>& row_subset,
                      const std::vector<std::uint32_t>& col_subset,
                      std::size_t max_dim = 64);

// Multi-prime certificate: ranks per prime, agreement, pivot stability,
// dedupe statistics, and the span membership of the denominator vector.
struct RankCertificate {
    std::vector<std::uint64_t> primes;
    std::vector<long> ranks;                  // parallel to primes
    long agreed_rank = -1;                    // -1 when the ranks disagree
    std::vector<std::uint32_t> pivot_columns; // first prime's run
    bool pivots_agree = false;
    std::uint32_t total_columns = 0;
    std::uint32_t distinct_columns = 0;
    std::uint32_t max_multiplicity = 0;
    bool denominator_checked = false;
    bool denominator_in_span = false; // over all primes
    double rank_seconds = 0.0;
    double span_seconds = 0.0;
};

RankCertificate certify_rank(const CuspMatrix& m,
                             const std::vector<std::uint64_t>& primes,
                             int threads = 0, bool check_denominator = true);

// Stable-field-order JSON rendering of a certificate.
std::string certificate_json(const RankCertificate& c);

} // namespace octt

#endif
