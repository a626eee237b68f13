#include "octt/octave.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace octt {

// ---------------------------------------------------------------------------
// Multiplication table.  Row i, column k holds e_i * e_k as (index, sign).
// Row 0 and column 0 express that e0 is the two-sided unit; the lower 7x7
// block is antisymmetric with e_i*e_i = -e0.
// ---------------------------------------------------------------------------
namespace {

constexpr int TAB_IDX[8][8] = {
    {0, 1, 2, 3, 4, 5, 6, 7},
    {1, 0, 4, 7, 2, 6, 5, 3},
    {2, 4, 0, 5, 1, 3, 7, 6},
    {3, 7, 5, 0, 6, 2, 4, 1},
    {4, 2, 1, 6, 0, 7, 3, 5},
    {5, 6, 3, 2, 7, 0, 1, 4},
    {6, 5, 7, 4, 3, 1, 0, 2},
    {7, 3, 6, 1, 5, 4, 2, 0},
};

constexpr int TAB_SGN[8][8] = {
    {+1, +1, +1, +1, +1, +1, +1, +1},
    {+1, -1, +1, +1, -1, +1, -1, -1},
    {+1, -1, -1, +1, +1, -1, +1, -1},
    {+1, -1, -1, -1, +1, +1, -1, +1},
    {+1, +1, -1, -1, -1, +1, +1, -1},
    {+1, -1, +1, -1, -1, -1, +1, +1},
    {+1, +1, -1, +1, -1, -1, -1, +1},
    {+1, +1, +1, -1, +1, -1, -1, -1},
};

// Generic table product on 8-coordinate arrays over any ring.
template <typename T>
std::array<T, 8> table_mul(const std::array<T, 8>& a, const std::array<T, 8>& b) {
    std::array<T, 8> r{};
    for (int i = 0; i < 8; ++i) {
        if (a[i] == T(0)) continue;
        for (int k = 0; k < 8; ++k) {
            if (b[k] == T(0)) continue;
            T term = a[i] * b[k];
            if (TAB_SGN[i][k] < 0)
                r[TAB_IDX[i][k]] -= term;
            else
                r[TAB_IDX[i][k]] += term;
        }
    }
    return r;
}

} // namespace

int mul_index(int i, int k) {
    DOMAIN_CHECK(0 <= i && i < 8 && 0 <= k && k < 8);
    return TAB_IDX[i][k];
}
int mul_sign(int i, int k) {
    DOMAIN_CHECK(0 <= i && i < 8 && 0 <= k && k < 8);
    return TAB_SGN[i][k];
}

// ---------------------------------------------------------------------------
// Octave (exact rational coordinates)
// ---------------------------------------------------------------------------

Octave Octave::operator+(const Octave& o) const {
    Octave r;
    for (int i = 0; i < 8; ++i) r.e[i] = e[i] + o.e[i];
    return r;
}
Octave Octave::operator-(const Octave& o) const {
    Octave r;
    for (int i = 0; i < 8; ++i) r.e[i] = e[i] - o.e[i];
    return r;
}
Octave Octave::operator-() const {
    Octave r;
    for (int i = 0; i < 8; ++i) r.e[i] = -e[i];
    return r;
}
Octave Octave::operator*(const Octave& o) const {
    Octave r;
    r.e = table_mul(e, o.e);
    return r;
}
Octave Octave::operator*(const Rat& s) const {
    Octave r;
    for (int i = 0; i < 8; ++i) r.e[i] = e[i] * s;
    return r;
}
bool Octave::is_zero() const {
    for (const Rat& c : e)
        if (c != 0) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const Octave& x) {
    os << "(";
    for (int i = 0; i < 8; ++i) os << x.e[i] << (i < 7 ? "," : ")");
    return os;
}

Octave conj(const Octave& x) {
    Octave r;
    r.e[0] = x.e[0];
    for (int i = 1; i < 8; ++i) r.e[i] = -x.e[i];
    return r;
}

Rat norm(const Octave& x) {
    Rat n = 0;
    for (const Rat& c : x.e) n += c * c;
    return n;
}

Rat trace(const Octave& x) { return 2 * x.e[0]; }

Rat triple_trace(const Octave& a, const Octave& b, const Octave& c) {
    return trace((a * b) * c);
}

// ---------------------------------------------------------------------------
// Basis matrices
// ---------------------------------------------------------------------------
namespace {

// Rows of 2F: f0..f7 in doubled e-coordinates (always integral).
constexpr long F2_ROWS[8][8] = {
    {2, 0, 0, 0, 0, 0, 0, 0},   // f0 = e0
    {0, 2, 0, 0, 0, 0, 0, 0},   // f1 = e1
    {0, 0, 2, 0, 0, 0, 0, 0},   // f2 = e2
    {0, 0, 0, 2, 0, 0, 0, 0},   // f3 = e3
    {0, 1, 1, 1, -1, 0, 0, 0},  // f4 = (e1+e2+e3-e4)/2
    {-1, -1, 0, 0, -1, 1, 0, 0},// f5 = (-e0-e1-e4+e5)/2
    {-1, 1, -1, 0, 0, 0, 1, 0}, // f6 = (-e0+e1-e2+e6)/2
    {-1, 0, 1, 0, 1, 0, 0, 1},  // f7 = (-e0+e2+e4+e7)/2
};

struct BasisData {
    RatMat F{8, 8};
    IntMat F2{8, 8};
    IntMat S{8, 8};
    IntMat Sinv{8, 8};
    RatMat Finv{8, 8};

    BasisData() {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                F2(i, j) = F2_ROWS[i][j];
                F(i, j) = frac(F2_ROWS[i][j], 2);
            }
        // S_ij = tr(conj(f_i) * f_j), computed from the algebra ...
        Octave f[8];
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) f[i].e[j] = F(i, j);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                Rat s = trace(conj(f[i]) * f[j]);
                LOGIC_CHECK(is_integer(s));
                S(i, j) = to_int(s);
            }
        // ... and cross-checked against the closed form S = 2FF'.
        RatMat S2 = (F * F.transpose()) * Rat(2);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) LOGIC_CHECK(Rat(S(i, j)) == S2(i, j));

        RatMat Sr(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) Sr(i, j) = Rat(S(i, j));
        RatMat Sri = inverse(Sr);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                LOGIC_CHECK(is_integer(Sri(i, j))); // det S = 1
                Sinv(i, j) = to_int(Sri(i, j));
            }
        Finv = inverse(F);
    }
};

const BasisData& basis_data() {
    static const BasisData d;
    return d;
}

} // namespace

const RatMat& f_basis_matrix() { return basis_data().F; }
const IntMat& f_basis_matrix_doubled() { return basis_data().F2; }
const IntMat& gram_s() { return basis_data().S; }
const IntMat& gram_s_inverse() { return basis_data().Sinv; }

std::array<Rat, 8> basis_convert(const std::array<Rat, 8>& coords,
                                 BasisDirection dir) {
    // x = sum_i g_i f_i has e-coordinates F' g; inversely g = (F')^-1 e.
    const BasisData& d = basis_data();
    std::array<Rat, 8> out{};
    if (dir == BasisDirection::f_to_e) {
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i) out[j] += d.F(i, j) * coords[i];
    } else {
        // (F')^-1 = (F^-1)', so g_j = sum_i (F^-1)(i,j) e_i.
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 8; ++i) out[j] += d.Finv(i, j) * coords[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integral octaves
// ---------------------------------------------------------------------------

IntegralOctave IntegralOctave::operator+(const IntegralOctave& o) const {
    IntegralOctave r;
    for (int i = 0; i < 8; ++i) r.f[i] = f[i] + o.f[i];
    return r;
}
IntegralOctave IntegralOctave::operator-(const IntegralOctave& o) const {
    IntegralOctave r;
    for (int i = 0; i < 8; ++i) r.f[i] = f[i] - o.f[i];
    return r;
}
IntegralOctave IntegralOctave::operator-() const {
    IntegralOctave r;
    for (int i = 0; i < 8; ++i) r.f[i] = -f[i];
    return r;
}

std::array<long, 8> IntegralOctave::e_doubled() const {
    std::array<long, 8> e2{};
    for (int i = 0; i < 8; ++i) {
        if (f[i] == 0) continue;
        for (int j = 0; j < 8; ++j) e2[j] += f[i] * F2_ROWS[i][j];
    }
    return e2;
}

IntegralOctave IntegralOctave::operator*(const IntegralOctave& o) const {
    // (2x)(2y) = 4xy on the table; the product is again integral, so its
    // doubled e-coordinates t/2 are integers and g = S^-1 (2F) (t/4) * 2
    //                                              = S^-1 ((2F) (t/2)) / 2.
    std::array<long, 8> t = table_mul(e_doubled(), o.e_doubled());
    const BasisData& d = basis_data();
    IntegralOctave r;
    // Two-step: u = (2F) * t, then g = S^-1 * u / 4 (exact).
    long u[8];
    for (int i = 0; i < 8; ++i) {
        long s = 0;
        for (int j = 0; j < 8; ++j) s += F2_ROWS[i][j] * t[j];
        u[i] = s;
    }
    for (int i = 0; i < 8; ++i) {
        long s = 0;
        for (int j = 0; j < 8; ++j) s += to_long(d.Sinv(i, j)) * u[j];
        LOGIC_CHECK(s % 4 == 0);
        r.f[i] = s / 4;
    }
    return r;
}

bool IntegralOctave::is_zero() const {
    for (long c : f)
        if (c != 0) return false;
    return true;
}

Octave IntegralOctave::to_octave() const {
    std::array<long, 8> e2 = e_doubled();
    Octave x;
    for (int i = 0; i < 8; ++i) x.e[i] = frac(e2[i], 2);
    return x;
}

std::ostream& operator<<(std::ostream& os, const IntegralOctave& x) {
    os << "[";
    for (int i = 0; i < 8; ++i) os << x.f[i] << (i < 7 ? "," : "]");
    return os;
}

bool is_integral(const Octave& x) {
    std::array<Rat, 8> g = basis_convert(x.e, BasisDirection::e_to_f);
    for (const Rat& c : g)
        if (!is_integer(c)) return false;
    return true;
}

IntegralOctave to_integral(const Octave& x) {
    std::array<Rat, 8> g = basis_convert(x.e, BasisDirection::e_to_f);
    IntegralOctave r;
    for (int i = 0; i < 8; ++i) r.f[i] = to_long(to_int(g[i]));
    return r;
}

IntegralOctave iconj(const IntegralOctave& x) {
    // conj(x) = tr(x) e0 - x, and tr(x) is an integer, so the conjugate is
    // again integral: subtract in f-coordinates (e0 = f0).
    long t = itrace(x);
    IntegralOctave r = -x;
    r.f[0] += t;
    return r;
}

long inorm(const IntegralOctave& x) {
    std::array<long, 8> e2 = x.e_doubled();
    long s = 0;
    for (long c : e2) s += c * c; // = 4 N(x)
    LOGIC_CHECK(s % 4 == 0);
    return s / 4;
}

long itrace(const IntegralOctave& x) {
    std::array<long, 8> e2 = x.e_doubled();
    return e2[0]; // tr = 2 x_0 = (2x)_0
}

long ipair(const IntegralOctave& a, const IntegralOctave& b) {
    // tr(conj(a)*b) = a' S b on f-coordinates.
    const IntMat& S = gram_s();
    long s = 0;
    for (int i = 0; i < 8; ++i) {
        if (a.f[i] == 0) continue;
        for (int j = 0; j < 8; ++j) s += a.f[i] * to_long(S(i, j)) * b.f[j];
    }
    return s;
}

long itriple_trace(const IntegralOctave& a, const IntegralOctave& b,
                        const IntegralOctave& c) {
    // tr((a*b)*c) via doubled coordinates: products of 2a,2b,2c give 8(ab)c,
    // and tr picks coordinate 0 of the table result.
    std::array<long, 8> t = table_mul(table_mul(a.e_doubled(), b.e_doubled()),
                                           c.e_doubled());
    LOGIC_CHECK(t[0] % 4 == 0);
    return t[0] / 4; // tr = 2*(coordinate 0) = 2 * t0/8 = t0/4
}

// ---------------------------------------------------------------------------
// Norm-shell enumeration (exact Fincke-Pohst on the form g'Sg = 2n).
//
// With the rational decomposition S = L D L' (L unit lower triangular, D
// positive diagonal) one has g'Sg = sum_i D_i (g_i + c_i)^2 where
// c_i = sum_{j>i} L_ji g_j.  Enumerating coordinates from i=7 down to 0 keeps
// every partial sum exact, and at each level the admissible g_i form a
// contiguous interval scanned outward from -round(c_i).
// ---------------------------------------------------------------------------
namespace {

struct Ldl {
    RatMat L{8, 8};
    std::array<Rat, 8> D{};

    Ldl() {
        const IntMat& S = gram_s();
        for (int j = 0; j < 8; ++j) {
            Rat d = Rat(S(j, j));
            for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k) * D[k];
            LOGIC_CHECK(d > 0); // S positive definite
            D[j] = d;
            L(j, j) = 1;
            for (int i = j + 1; i < 8; ++i) {
                Rat v = Rat(S(i, j));
                for (int k = 0; k < j; ++k) v -= L(i, k) * L(j, k) * D[k];
                L(i, j) = v / d;
            }
        }
    }
};

const Ldl& ldl() {
    static const Ldl d;
    return d;
}

// Nearest integer to a rational, floor(x + 1/2); the scan logic below relies
// on this being a true nearest integer, so use floor division (mpz operator/
// would truncate toward zero).
long round_rat(const Rat& x) {
    Int num2 = 2 * x.get_num() + x.get_den(); // den > 0 in canonical form
    Int den2 = 2 * x.get_den();
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num2.get_mpz_t(), den2.get_mpz_t());
    return to_long(q);
}

void enumerate_level(int i, std::array<long, 8>& g, const Rat& budget,
                     const Rat& target_total, Rat partial,
                     std::vector<IntegralOctave>& out) {
    const Ldl& d = ldl();
    // c_i = sum_{j>i} L_ji g_j
    Rat c = 0;
    for (int j = i + 1; j < 8; ++j)
        if (g[j] != 0) c += d.L(j, i) * g[j];

    // Explicit Rat return: the deduced type would be a GMP expression template
    // holding a reference to the local t.
    auto level_term = [&](long gi) -> Rat {
        Rat t = Rat(gi) + c;
        return d.D[i] * t * t;
    };
    auto recurse = [&](long gi, const Rat& term) {
        g[i] = gi;
        if (i == 0) {
            if (partial + term == target_total) {
                IntegralOctave x;
                x.f = g;
                out.push_back(x);
            }
        } else {
            enumerate_level(i - 1, g, budget, target_total, partial + term, out);
        }
    };

    // The admissible g_i form a contiguous interval centered at -c_i, and the
    // level term grows monotonically with |g_i + c_i|, so scanning outward
    // from the nearest integer and stopping at the first violation in each
    // direction visits exactly the admissible set.
    long center = round_rat(-c);
    for (long gi = center;; ++gi) {
        Rat term = level_term(gi);
        if (partial + term > budget) break;
        recurse(gi, term);
    }
    for (long gi = center - 1;; --gi) {
        Rat term = level_term(gi);
        if (partial + term > budget) break;
        recurse(gi, term);
    }
    g[i] = 0;
}

} // namespace

std::vector<IntegralOctave> enumerate_by_norm(long n) {
    DOMAIN_CHECK(n >= 0);
    std::vector<IntegralOctave> out;
    Rat target = Rat(2 * n); // g'Sg = 2 N
    std::array<long, 8> g{};
    enumerate_level(7, g, target, target, Rat(0), out);
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<IntegralOctave>& norm_shell(long n) {
    DOMAIN_CHECK(n >= 0);
    static std::mutex mu;
    static std::deque<std::vector<IntegralOctave>> cache; // stable references
    std::lock_guard<std::mutex> lock(mu);
    while ((long)cache.size() <= n)
        cache.push_back(enumerate_by_norm((long)cache.size()));
    return cache[(std::size_t)n];
}

// ---------------------------------------------------------------------------
// Complex octaves
// ---------------------------------------------------------------------------

COctave::COctave(const Octave& x) {
    for (int i = 0; i < 8; ++i) e[i] = to_double(x.e[i]);
}
COctave COctave::operator+(const COctave& o) const {
    COctave r;
    for (int i = 0; i < 8; ++i) r.e[i] = e[i] + o.e[i];
    return r;
}
COctave COctave::operator-(const COctave& o) const {
    COctave r;
    for (int i = 0; i < 8; ++i) r.e[i] = e[i] - o.e[i];
    return r;
}
COctave COctave::operator*(const COctave& o) const {
    COctave r;
    for (int i = 0; i < 8; ++i) {
        if (e[i] == 0.0) continue;
        for (int k = 0; k < 8; ++k) {
            if (o.e[k] == 0.0) continue;
            r.e[TAB_IDX[i][k]] += double(TAB_SGN[i][k]) * e[i] * o.e[k];
        }
    }
    return r;
}
COctave COctave::operator*(std::complex<double> s) const {
    COctave r;
    for (int i = 0; i < 8; ++i) r.e[i] = e[i] * s;
    return r;
}

COctave cconj(const COctave& x) {
    COctave r;
    r.e[0] = x.e[0];
    for (int i = 1; i < 8; ++i) r.e[i] = -x.e[i];
    return r;
}
std::complex<double> cnorm(const COctave& x) {
    std::complex<double> s = 0;
    for (const auto& c : x.e) s += c * c;
    return s;
}
std::complex<double> ctrace(const COctave& x) { return 2.0 * x.e[0]; }

std::complex<double> ctriple_trace(const IntegralOctave& a, const COctave& z,
                                   const IntegralOctave& b) {
    // tr(conj(a)*z*b) = tr(w*b) with w = conj(a)*z; tr(w*v) = 2(w0 v0 -
    // sum_{i>=1} w_i v_i) because e_i*e_k contributes to e0 only for k = i.
    COctave ca;
    {
        IntegralOctave ac = iconj(a);
        std::array<long, 8> e2 = ac.e_doubled();
        for (int i = 0; i < 8; ++i) ca.e[i] = 0.5 * double(e2[i]);
    }
    COctave w = ca * z;
    std::array<long, 8> v2 = b.e_doubled();
    std::complex<double> s = w.e[0] * double(v2[0]);
    for (int i = 1; i < 8; ++i) s -= w.e[i] * double(v2[i]);
    return s;
}

} // namespace octt
