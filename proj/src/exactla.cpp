#include "octt/exactla.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "octt/check.hpp"

namespace octt {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)(a)*b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

int pick_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("OCTT_THREADS")) threads = std::atoi(env);
        if (threads <= 0) threads = int(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    return threads;
}

// Five legal bytes -> exponent of i; -1 marks illegal bytes.
const std::array<int, 256>& byte_code() {
    static const std::array<int, 256> t = [] {
        std::array<int, 256> c;
        c.fill(-1);
        c[0] = 0;
        c[1] = 1;
        c[2] = 2;
        c[3] = 3;
        c[255] = 4; // maps to zero
        return c;
    }();
    return t;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for the full 64-bit range.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    DOMAIN_CHECK(a % p != 0);
    return pow(a, p - 2);
}

PrimeField make_prime_field(std::uint64_t p) {
    DOMAIN_CHECK(p >= 5 && p < (1ull << 31));
    DOMAIN_CHECK(is_prime_u64(p));
    DOMAIN_CHECK(p % 4 == 1);
    PrimeField f;
    f.p = p;
    f.barrett = std::uint64_t(((unsigned __int128)(1) << 62) / p);
    // Smallest quadratic nonresidue a, then i = a^((p-1)/4).
    std::uint64_t a = 2;
    while (f.pow(a, (p - 1) / 2) != p - 1) ++a;
    std::uint64_t s = f.pow(a, (p - 1) / 4);
    LOGIC_CHECK(f.mul(s, s) == p - 1);
    f.sqrt_minus_one = std::min(s, p - s);
    return f;
}

std::uint64_t entry_mod_p(std::uint8_t byte, const PrimeField& f) {
    const int code = byte_code()[byte];
    DOMAIN_CHECK(code >= 0);
    switch (code) {
        case 0: return 1;
        case 1: return f.sqrt_minus_one;
        case 2: return f.p - 1;
        case 3: return f.p - f.sqrt_minus_one;
        default: return 0;
    }
}

std::vector<std::uint64_t> column_mod_p(const CuspMatrix& m, std::uint32_t col,
                                        const PrimeField& f) {
    DOMAIN_CHECK(col < m.cols);
    std::vector<std::uint64_t> v(m.rows);
    for (std::uint32_t i = 0; i < m.rows; ++i)
        v[i] = entry_mod_p(m.at(i, col), f);
    return v;
}

ColumnClasses dedupe_columns(const CuspMatrix& m) {
    DOMAIN_CHECK(m.entries.size() == std::size_t(m.rows) * m.cols);
    const std::size_t rows = m.rows, cols = m.cols;

    // Tiled transpose so that hashing and confirmation run on contiguous
    // column bytes.
    std::vector<std::uint8_t> colmajor(rows * cols);
    const std::size_t tile = 128;
    for (std::size_t i0 = 0; i0 < rows; i0 += tile)
        for (std::size_t j0 = 0; j0 < cols; j0 += tile) {
            const std::size_t i1 = std::min(rows, i0 + tile);
            const std::size_t j1 = std::min(cols, j0 + tile);
            for (std::size_t i = i0; i < i1; ++i)
                for (std::size_t j = j0; j < j1; ++j)
                    colmajor[j * rows + i] = m.entries[i * cols + j];
        }

    ColumnClasses out;
    out.class_of.assign(cols, 0);
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> bucket;
    bucket.reserve(1 << 14);
    for (std::size_t j = 0; j < cols; ++j) {
        const std::uint8_t* cj = colmajor.data() + j * rows;
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (std::size_t i = 0; i < rows; ++i)
            h = (h ^ cj[i]) * 1099511628211ull;

        auto& cands = bucket[h];
        std::uint32_t cls = std::uint32_t(-1);
        for (std::uint32_t c : cands) {
            const std::uint8_t* cr = colmajor.data() + std::size_t(out.rep[c]) * rows;
            if (std::equal(cj, cj + rows, cr)) {
                cls = c;
                break;
            }
        }
        if (cls == std::uint32_t(-1)) {
            cls = std::uint32_t(out.rep.size());
            out.rep.push_back(std::uint32_t(j));
            out.multiplicity.push_back(0);
            cands.push_back(cls);
        }
        out.class_of[j] = cls;
        ++out.multiplicity[cls];
    }
    return out;
}

void Eliminator::reduce(
    std::vector<std::uint64_t>& v, std::size_t from,
    std::vector<std::pair<std::size_t, std::uint64_t>>* trace) const {
    DOMAIN_CHECK(v.size() == rows_);
    const std::size_t n = basis_.size();
    if (from >= n) return;

    // Elimination coefficients from the pivot rows alone.
    std::vector<std::uint64_t> vpiv(n - from);
    for (std::size_t j = from; j < n; ++j) vpiv[j - from] = v[pivots_[j]];
    std::vector<std::uint64_t> coef(n - from, 0);
    bool any = false;
    for (std::size_t k = from; k < n; ++k) {
        const std::uint64_t c = vpiv[k - from];
        if (c == 0) continue;
        coef[k - from] = c;
        any = true;
        if (trace) trace->emplace_back(k, c);
        const std::vector<std::uint64_t>& b = basis_[k];
        for (std::size_t j = k + 1; j < n; ++j)
            vpiv[j - from] = f_.sub(vpiv[j - from], f_.mul(c, b[pivots_[j]]));
    }
    if (!any) return;

    // Apply v <- v - sum coef_k * b_k with lazy reduction: accumulate plain
    // u64 products and fold mod p only when another product could overflow.
    const std::uint64_t p = f_.p, barrett = f_.barrett;
    const std::uint64_t prod_max = (p - 1) * (p - 1);
    const std::uint64_t cap = (~std::uint64_t(0) - (p - 1)) / prod_max;
    std::vector<std::uint64_t> acc(v.begin(), v.end());
    const auto fold = [&] {
        for (std::size_t r = 0; r < rows_; ++r) {
            const std::uint64_t t = acc[r];
            std::uint64_t q =
                std::uint64_t((unsigned __int128)(t)*barrett >> 62);
            std::uint64_t rem = t - q * p;
            while (rem >= p) rem -= p;
            acc[r] = rem;
        }
    };
    std::uint64_t pending = 0;
    for (std::size_t k = from; k < n; ++k) {
        if (coef[k - from] == 0) continue;
        if (pending == cap) {
            fold();
            pending = 0;
        }
        const std::uint64_t neg = p - coef[k - from];
        const std::vector<std::uint64_t>& b = basis_[k];
        for (std::size_t r = 0; r < rows_; ++r) acc[r] += neg * b[r];
        ++pending;
    }
    fold();
    v.assign(acc.begin(), acc.end());
}

bool Eliminator::add_column(std::vector<std::uint64_t> v) {
    reduce(v);
    std::size_t piv = rows_;
    for (std::size_t r = 0; r < rows_; ++r)
        if (v[r] != 0) {
            piv = r;
            break;
        }
    if (piv == rows_) return false;
    for (std::size_t j : pivots_) LOGIC_CHECK(v[j] == 0);
    const std::uint64_t s = f_.inv(v[piv]);
    for (auto& x : v) x = f_.mul(x, s);
    pivots_.push_back(piv);
    basis_.push_back(std::move(v));
    return true;
}

EliminationResult rank_mod_p(const CuspMatrix& m, const PrimeField& f,
                             const ColumnClasses& classes, int threads,
                             std::size_t batch) {
    DOMAIN_CHECK(batch >= 1);
    threads = pick_threads(threads);

    // Descending multiplicity, ties by first appearance.
    std::vector<std::uint32_t> order(classes.rep.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return classes.multiplicity[a] > classes.multiplicity[b];
                     });

    EliminationResult out{0, {}, Eliminator(f, m.rows)};
    std::vector<std::vector<std::uint64_t>> buf;
    for (std::size_t lo = 0; lo < order.size(); lo += batch) {
        const std::size_t hi = std::min(order.size(), lo + batch);
        buf.assign(hi - lo, {});
        const std::size_t snap = out.elim.rank();
        auto work = [&](std::size_t wlo, std::size_t whi) {
            for (std::size_t k = wlo; k < whi; ++k) {
                buf[k] = column_mod_p(m, classes.rep[order[lo + k]], f);
                out.elim.reduce(buf[k]); // frozen snapshot: read-only basis
            }
        };
        if (threads == 1 || hi - lo == 1) {
            work(0, hi - lo);
        } else {
            std::vector<std::thread> pool;
            const std::size_t n = hi - lo;
            const std::size_t chunk = (n + std::size_t(threads) - 1) / std::size_t(threads);
            for (int t = 0; t < threads; ++t) {
                const std::size_t wlo = std::size_t(t) * chunk;
                if (wlo >= n) break;
                pool.emplace_back(work, wlo, std::min(n, wlo + chunk));
            }
            for (auto& th : pool) th.join();
        }
        for (std::size_t k = 0; k < hi - lo; ++k) {
            out.elim.reduce(buf[k], snap);
            if (out.elim.add_column(std::move(buf[k])))
                out.pivot_columns.push_back(classes.rep[order[lo + k]]);
        }
    }
    out.rank = long(out.elim.rank());
    return out;
}

EliminationResult rank_mod_p(const CuspMatrix& m, const PrimeField& f) {
    return rank_mod_p(m, f, dedupe_columns(m));
}

long rank_dense(const std::vector<std::vector<std::uint64_t>>& columns,
                const PrimeField& f) {
    if (columns.empty()) return 0;
    Eliminator e(f, columns.front().size());
    for (const auto& c : columns) e.add_column(c);
    return long(e.rank());
}

bool in_span_mod_p(std::vector<std::uint64_t> v, const Eliminator& e) {
    e.reduce(v);
    return std::all_of(v.begin(), v.end(),
                       [](std::uint64_t x) { return x == 0; });
}

bool in_span_mod_p(const std::vector<std::int64_t>& target,
                   const EliminationResult& run) {
    const PrimeField& f = run.elim.field();
    DOMAIN_CHECK(target.size() == run.elim.rows());
    std::vector<std::uint64_t> v(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        const std::int64_t r = target[i] % std::int64_t(f.p);
        v[i] = std::uint64_t(r < 0 ? r + std::int64_t(f.p) : r);
    }
    return in_span_mod_p(std::move(v), run.elim);
}

namespace {

// Gaussian integers for the fraction-free elimination.
struct GInt {
    Int re{0}, im{0};

    bool is_zero() const { return re == 0 && im == 0; }
    GInt operator*(const GInt& o) const {
        return {Int(re * o.re - im * o.im), Int(re * o.im + im * o.re)};
    }
    GInt operator-(const GInt& o) const {
        return {Int(re - o.re), Int(im - o.im)};
    }
    bool operator==(const GInt& o) const { return re == o.re && im == o.im; }
};

// Exact quotient u/v in Z[i]; the caller guarantees divisibility
// (Bareiss updates), and the result is verified by re-multiplication.
GInt gdiv_exact(const GInt& u, const GInt& v) {
    const Int d = v.re * v.re + v.im * v.im;
    LOGIC_CHECK(d != 0);
    GInt q{Int((u.re * v.re + u.im * v.im) / d),
           Int((u.im * v.re - u.re * v.im) / d)};
    LOGIC_CHECK(q * v == u);
    return q;
}

GInt byte_gint(std::uint8_t b) {
    switch (byte_code()[b]) {
        case 0: return {Int(1), Int(0)};
        case 1: return {Int(0), Int(1)};
        case 2: return {Int(-1), Int(0)};
        case 3: return {Int(0), Int(-1)};
        case 4: return {Int(0), Int(0)};
        default: DOMAIN_CHECK(false); return {};
    }
}

} // namespace

long rank_char0_small(const CuspMatrix& m,
                      const std::vector<std::uint32_t>& row_subset,
                      const std::vector<std::uint32_t>& col_subset,
                      std::size_t max_dim) {
    DOMAIN_CHECK(row_subset.size() <= max_dim && col_subset.size() <= max_dim);
    const std::size_t nr = row_subset.size(), nc = col_subset.size();
    std::vector<std::vector<GInt>> a(nr, std::vector<GInt>(nc));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            DOMAIN_CHECK(row_subset[i] < m.rows && col_subset[j] < m.cols);
            a[i][j] = byte_gint(m.at(row_subset[i], col_subset[j]));
        }

    GInt prev{Int(1), Int(0)};
    std::size_t rank = 0;
    for (std::size_t k = 0; rank < nr && k < nc; ++k) {
        // First nonzero entry in column k at or below row `rank`.
        std::size_t pi = nr;
        for (std::size_t i = rank; i < nr; ++i)
            if (!a[i][k].is_zero()) {
                pi = i;
                break;
            }
        if (pi == nr) continue;
        std::swap(a[rank], a[pi]);
        for (std::size_t i = rank + 1; i < nr; ++i)
            for (std::size_t j = k + 1; j < nc; ++j)
                a[i][j] = gdiv_exact(a[rank][k] * a[i][j] - a[i][k] * a[rank][j],
                                     prev);
        for (std::size_t i = rank + 1; i < nr; ++i) a[i][k] = GInt{};
        prev = a[rank][k];
        ++rank;
    }
    return long(rank);
}

RankCertificate certify_rank(const CuspMatrix& m,
                             const std::vector<std::uint64_t>& primes,
                             int threads, bool check_denominator) {
    using clock = std::chrono::steady_clock;
    DOMAIN_CHECK(!primes.empty());
    RankCertificate cert;
    cert.primes = primes;
    cert.total_columns = m.cols;

    const auto t0 = clock::now();
    const ColumnClasses classes = dedupe_columns(m);
    cert.distinct_columns = std::uint32_t(classes.rep.size());
    if (!classes.multiplicity.empty())
        cert.max_multiplicity = *std::max_element(classes.multiplicity.begin(),
                                                  classes.multiplicity.end());

    std::vector<EliminationResult> runs;
    for (std::uint64_t p : primes) {
        const PrimeField f = make_prime_field(p);
        runs.push_back(rank_mod_p(m, f, classes, threads));
        cert.ranks.push_back(runs.back().rank);
    }
    cert.agreed_rank = cert.ranks.front();
    for (long r : cert.ranks)
        if (r != cert.agreed_rank) cert.agreed_rank = -1;
    cert.pivot_columns = runs.front().pivot_columns;
    cert.pivots_agree = std::all_of(
        runs.begin(), runs.end(), [&](const EliminationResult& r) {
            return r.pivot_columns == cert.pivot_columns;
        });
    cert.rank_seconds = std::chrono::duration<double>(clock::now() - t0).count();

    if (check_denominator) {
        const auto t1 = clock::now();
        std::vector<std::int64_t> denom(m.denominators.begin(),
                                        m.denominators.end());
        cert.denominator_checked = true;
        cert.denominator_in_span = true;
        for (const EliminationResult& r : runs)
            cert.denominator_in_span =
                cert.denominator_in_span && in_span_mod_p(denom, r);
        cert.span_seconds =
            std::chrono::duration<double>(clock::now() - t1).count();
    }
    return cert;
}

std::string certificate_json(const RankCertificate& c) {
    nlohmann::ordered_json j;
    j["primes"] = c.primes;
    j["ranks"] = c.ranks;
    j["agreed_rank"] = c.agreed_rank;
    j["pivots_agree"] = c.pivots_agree;
    j["pivot_columns"] = c.pivot_columns;
    j["total_columns"] = c.total_columns;
    j["distinct_columns"] = c.distinct_columns;
    j["max_multiplicity"] = c.max_multiplicity;
    j["denominator_checked"] = c.denominator_checked;
    j["denominator_in_span"] = c.denominator_in_span;
    j["rank_seconds"] = c.rank_seconds;
    j["span_seconds"] = c.span_seconds;
    return j.dump(2);
}

} // namespace octt
