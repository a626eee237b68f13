#include "octt/cusps.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numeric>
#include <thread>

#include "octt/check.hpp"

namespace octt {

namespace {

// {0,1} lifts of f-coordinate bytes and their norms, shared tables.
struct LiftData {
    std::array<IntegralOctave, 256> lift;
    std::array<long, 256> norm;

    LiftData() {
        for (int b = 0; b < 256; ++b) {
            for (int i = 0; i < 8; ++i) lift[b].f[i] = (b >> i) & 1;
            norm[b] = inorm(lift[b]);
        }
    }
};

const LiftData& lifts() {
    static const LiftData d;
    return d;
}

std::uint8_t parity_mask(const IntegralOctave& x) {
    std::uint8_t m = 0;
    for (int i = 0; i < 8; ++i) m |= std::uint8_t((x.f[i] & 1) << i);
    return m;
}

// Per-row lookup tables.  For g = (h1,h2) given as f-coordinate bytes:
//   evenness of R g  <=>  (r1 odd ? h1 : 0) == mask1[h2]
//                    and  (r2 odd ? h2 : 0) == mask2[h1]
//   bracket mod 4    ==   n1[h1] + n2[h2] + t[h2][h1]   (each stored mod 4,
// t via the subset-sum recursion over the bits of h1 on S*(r*lift(h2))).
struct RowTables {
    std::array<std::uint8_t, 256> mask1, mask2, n1, n2;
    std::array<std::array<std::uint8_t, 256>, 256> t;
    bool odd1 = false, odd2 = false;

    void fill(const HermitianR& R) {
        const LiftData& ld = lifts();
        const IntMat& s = gram_s();
        odd1 = (R.r1 & 1) != 0;
        odd2 = (R.r2 & 1) != 0;
        for (int h = 0; h < 256; ++h) {
            n1[h] = std::uint8_t(((R.r1 * ld.norm[h]) % 4 + 4) % 4);
            n2[h] = std::uint8_t(((R.r2 * ld.norm[h]) % 4 + 4) % 4);
            mask2[h] = parity_mask(iconj(R.r) * ld.lift[h]);
        }
        for (int h2 = 0; h2 < 256; ++h2) {
            const IntegralOctave w = R.r * ld.lift[h2];
            mask1[h2] = parity_mask(w);
            std::array<std::uint8_t, 8> sw{};
            for (int i = 0; i < 8; ++i) {
                long acc = 0;
                for (int j = 0; j < 8; ++j)
                    acc += to_long(s(std::size_t(i), std::size_t(j))) * w.f[j];
                sw[i] = std::uint8_t((acc % 4 + 4) % 4);
            }
            auto& row = t[h2];
            row[0] = 0;
            for (int m = 1; m < 256; ++m)
                row[m] = std::uint8_t(
                    (row[m & (m - 1)] + sw[std::countr_zero(unsigned(m))]) & 3);
        }
    }

    bool even(int h1, int h2) const {
        return (odd1 ? h1 : 0) == mask1[h2] && (odd2 ? h2 : 0) == mask2[h1];
    }
    int bracket_mod4(int h1, int h2) const {
        return (n1[h1] + n2[h2] + t[h2][h1]) & 3;
    }
};

void fill_row(const RowTables& rt, std::uint8_t* out, std::int64_t& denom) {
    std::int64_t d = 0;
    for (int a = 0; a < 65536; ++a) {
        const int h1 = a & 255, h2 = a >> 8;
        const int b = rt.bracket_mod4(h1, h2);
        d += (b & 1) ? -1 : 1;
        out[a] = rt.even(h1, h2) ? std::uint8_t(b) : std::uint8_t(255);
    }
    denom = d;
}

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    DOMAIN_CHECK(bool(is));
    return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
           (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

} // namespace

int mod2_form(std::uint16_t v) {
    static const std::array<int, 256> norm_parity = [] {
        std::array<int, 256> p{};
        for (int b = 0; b < 256; ++b) p[b] = int(lifts().norm[b] & 1);
        return p;
    }();
    const int a = v & 1, b = (v >> 1) & 1, c = (v >> 2) & 1, d = (v >> 3) & 1;
    return (a & b) ^ (c & d) ^ norm_parity[(v >> 4) & 255];
}

const std::vector<std::uint16_t>& enumerate_isotropic() {
    static const std::vector<std::uint16_t> iso = [] {
        std::vector<std::uint16_t> v;
        for (int b = 1; b < 4096; ++b)
            if (mod2_form(std::uint16_t(b)) == 0) v.push_back(std::uint16_t(b));
        return v;
    }();
    return iso;
}

std::ostream& operator<<(std::ostream& os, const HermitianR& r) {
    return os << "R{" << r.r1 << ", " << r.r2 << ", " << r.r << ", "
              << (r.type == HermitianR::EntryType::zero_two ? "0/2" : "0/1")
              << "}";
}

const std::vector<HermitianR>& enumerate_cusp_R() {
    static const std::vector<HermitianR> rows = [] {
        std::vector<HermitianR> v;
        v.reserve(2047);
        for (int scale = 2; scale >= 1; --scale) {
            for (int t = (scale == 2 ? 0 : 1); t < 1024; ++t) {
                HermitianR r;
                r.type = scale == 2 ? HermitianR::EntryType::zero_two
                                    : HermitianR::EntryType::zero_one;
                r.r1 = scale * (t & 1);
                r.r2 = scale * ((t >> 1) & 1);
                for (int i = 0; i < 8; ++i) r.r.f[i] = scale * ((t >> (2 + i)) & 1);
                v.push_back(r);
            }
        }
        return v;
    }();
    return rows;
}

long r_bracket(const HermitianR& R, const IntegralOctave& h1,
               const IntegralOctave& h2) {
    return R.r1 * inorm(h1) + R.r2 * inorm(h2) +
           itriple_trace(iconj(h1), R.r, h2);
}

bool rg_even(const HermitianR& R, const IntegralOctave& h1,
             const IntegralOctave& h2) {
    const IntegralOctave a = R.r * h2, b = iconj(R.r) * h1;
    for (int i = 0; i < 8; ++i) {
        if ((R.r1 * h1.f[i] + a.f[i]) % 2 != 0) return false;
        if ((b.f[i] + R.r2 * h2.f[i]) % 2 != 0) return false;
    }
    return true;
}

std::uint8_t numerator_entry(const HermitianR& R, std::uint16_t a) {
    const IntegralOctave h1 = lifts().lift[a & 255];
    const IntegralOctave h2 = lifts().lift[a >> 8];
    if (!rg_even(R, h1, h2)) return 255;
    return std::uint8_t((r_bracket(R, h1, h2) % 4 + 4) % 4);
}

long denominator_sum(const HermitianR& R) {
    auto rt = std::make_unique<RowTables>();
    rt->fill(R);
    long d = 0;
    for (int a = 0; a < 65536; ++a)
        d += (rt->bracket_mod4(a & 255, a >> 8) & 1) ? -1 : 1;
    return d;
}

CuspMatrix build_cusp_matrix(int threads) {
    const std::vector<HermitianR>& rows = enumerate_cusp_R();
    CuspMatrix m;
    m.rows = std::uint32_t(rows.size());
    m.cols = 65536;
    m.entries.assign(std::size_t(m.rows) * m.cols, 0);
    m.denominators.assign(m.rows, 0);

    if (threads <= 0) {
        if (const char* env = std::getenv("OCTT_THREADS"))
            threads = std::atoi(env);
        if (threads <= 0) threads = int(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min<int>(threads, int(m.rows));

    const auto worker = [&](std::size_t lo, std::size_t hi) {
        auto rt = std::make_unique<RowTables>();
        for (std::size_t i = lo; i < hi; ++i) {
            rt->fill(rows[i]);
            fill_row(*rt, m.entries.data() + i * m.cols, m.denominators[i]);
        }
    };

    if (threads == 1) {
        worker(0, m.rows);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (m.rows + std::size_t(threads) - 1) / std::size_t(threads);
        for (int t = 0; t < threads; ++t) {
            const std::size_t lo = std::size_t(t) * chunk;
            const std::size_t hi = std::min<std::size_t>(lo + chunk, m.rows);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (std::thread& th : pool) th.join();
    }
    return m;
}

void write_cusp_matrix(const std::string& path, const CuspMatrix& m) {
    DOMAIN_CHECK(m.entries.size() == std::size_t(m.rows) * m.cols);
    DOMAIN_CHECK(m.denominators.size() == m.rows);
    std::ofstream os(path, std::ios::binary);
    DOMAIN_CHECK(bool(os));
    os.write("OCTT", 4);
    put_u32(os, 1);
    put_u32(os, m.rows);
    put_u32(os, m.cols);
    os.write(reinterpret_cast<const char*>(m.entries.data()),
             std::streamsize(m.entries.size()));
    for (std::int64_t d : m.denominators) {
        const std::uint64_t u = std::uint64_t(d);
        char b[8];
        for (int i = 0; i < 8; ++i) b[i] = char((u >> (8 * i)) & 0xff);
        os.write(b, 8);
    }
    DOMAIN_CHECK(bool(os));
}

CuspMatrix read_cusp_matrix(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    DOMAIN_CHECK(bool(is));
    char magic[4];
    is.read(magic, 4);
    DOMAIN_CHECK(bool(is) && std::string(magic, 4) == "OCTT");
    DOMAIN_CHECK(get_u32(is) == 1);
    CuspMatrix m;
    m.rows = get_u32(is);
    m.cols = get_u32(is);
    m.entries.resize(std::size_t(m.rows) * m.cols);
    is.read(reinterpret_cast<char*>(m.entries.data()),
            std::streamsize(m.entries.size()));
    DOMAIN_CHECK(bool(is));
    m.denominators.resize(m.rows);
    for (std::uint32_t i = 0; i < m.rows; ++i) {
        unsigned char b[8];
        is.read(reinterpret_cast<char*>(b), 8);
        DOMAIN_CHECK(bool(is));
        std::uint64_t u = 0;
        for (int k = 0; k < 8; ++k) u |= std::uint64_t(b[k]) << (8 * k);
        m.denominators[i] = std::int64_t(u);
    }
    return m;
}

std::ostream& operator<<(std::ostream& os, const CycValue& v) {
    os << "(" << v.prefactor << ") * [";
    for (long k = 0; k < v.half_order; ++k)
        os << v.coeffs[std::size_t(k)] << (k + 1 == v.half_order ? "" : " ");
    return os << "]_" << v.half_order;
}

CycValue cyc_lift(const CycValue& v, long half_order) {
    DOMAIN_CHECK(half_order > 0 && half_order % v.half_order == 0);
    CycValue out;
    out.prefactor = v.prefactor;
    out.half_order = half_order;
    out.coeffs.assign(std::size_t(half_order), Int(0));
    const long f = half_order / v.half_order;
    for (long k = 0; k < v.half_order; ++k)
        out.coeffs[std::size_t(k * f)] = v.coeffs[std::size_t(k)];
    return out;
}

CycValue cusp_value_general(
    const std::function<Int(const std::array<long, 16>&)>& phi, const Rat& s,
    const Rat& r1, const Rat& r2, const Octave& r, long n_mod,
    const std::vector<int>& active_coords, long term_budget) {
    DOMAIN_CHECK(s != 0);
    DOMAIN_CHECK(n_mod >= 1);
    long terms = 1;
    for (std::size_t k = 0; k < active_coords.size(); ++k) {
        DOMAIN_CHECK(active_coords[k] >= 0 && active_coords[k] < 16);
        DOMAIN_CHECK(terms <= term_budget / n_mod);
        terms *= n_mod;
    }

    // Collect phi(g) e^{pi i s R[g]} over the section.
    std::vector<std::pair<Rat, Int>> collected; // (exponent, weight)
    std::vector<long> digits(active_coords.size(), 0);
    for (long step = 0; step < terms; ++step) {
        std::array<long, 16> g{};
        for (std::size_t k = 0; k < digits.size(); ++k)
            g[std::size_t(active_coords[k])] = digits[k];
        const Int w = phi(g);
        if (w != 0) {
            IntegralOctave h1, h2;
            for (int i = 0; i < 8; ++i) {
                h1.f[i] = g[std::size_t(i)];
                h2.f[i] = g[std::size_t(8 + i)];
            }
            const Octave o1 = h1.to_octave(), o2 = h2.to_octave();
            const Rat bracket =
                r1 * norm(o1) + r2 * norm(o2) + triple_trace(conj(o1), r, o2);
            collected.emplace_back(s * bracket, w);
        }
        for (std::size_t k = 0; k < digits.size(); ++k) {
            if (++digits[k] < n_mod) break;
            digits[k] = 0;
        }
    }

    CycValue out;
    long l = 1;
    for (const auto& term : collected) {
        const Int& den = term.first.get_den();
        DOMAIN_CHECK(fits_long(den));
        l = std::lcm(l, to_long(den));
    }
    out.half_order = l;
    out.coeffs.assign(std::size_t(l), Int(0));
    for (const auto& [expo, w] : collected) {
        const Int step = expo.get_num() * (l / to_long(expo.get_den()));
        Int k2 = step % (2 * l);
        if (k2 < 0) k2 += 2 * l;
        const long idx = to_long(k2);
        if (idx < l) out.coeffs[std::size_t(idx)] += w;
        else out.coeffs[std::size_t(idx - l)] -= w;
    }

    Rat sp = 1;
    for (int i = 0; i < 8; ++i) sp *= s;
    Int np = 1;
    for (int i = 0; i < 16; ++i) np *= n_mod;
    out.prefactor = Rat(1) / (sp * Rat(np));
    out.prefactor.canonicalize();
    return out;
}

} // namespace octt
