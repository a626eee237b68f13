#ifndef OCTT_CUSPS_HPP
#define OCTT_CUSPS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "octt/octave.hpp"
#include "octt/rational.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// Level-two cusp layer.  Cusps of level two correspond to nonzero isotropic
// vectors of the quadratic space F_2^12 (coordinates a,b,c,d,x0..x7, with x
// the f-coordinates of an octave and form ab + cd + N(x) mod 2).  Each cusp
// carries a 2x2 Hermitian octave matrix R = [[r1, r],[conj(r), r2]] whose
// entries are either all in {0,1} ("R/2" rows) or all in {0,2}, and the
// second-kind theta value at the cusp reduces to the ratio
//
//     sum_{g mod 2, Rg even} phi(g) i^{R[g]}  /  sum_{g mod 2} (-1)^{R[g]},
//
// where g = (h1,h2) runs over {0,1}-lifts of f-coordinate bytes and
// R[g] = r1 N(h1) + r2 N(h2) + tr(conj(h1) r h2).  The numerators for all
// 2^16 delta characteristics and all 2047 rows form the cusp matrix whose
// rank certifies the dimension of the space spanned by the restrictions.
// ---------------------------------------------------------------------------

// Quadratic form on F_2^12: bit 0 = a, 1 = b, 2 = c, 3 = d, 4..11 = x0..x7;
// value ab + cd + N(x-lift) mod 2 with the {0,1} lift of x.
int mod2_form(std::uint16_t v);

// All 2079 nonzero isotropic vectors in increasing bit-pattern order.
const std::vector<std::uint16_t>& enumerate_isotropic();

struct HermitianR {
    enum class EntryType { zero_two, zero_one };
    long r1 = 0, r2 = 0;
    IntegralOctave r{};
    EntryType type = EntryType::zero_two;

    bool operator==(const HermitianR& o) const {
        return r1 == o.r1 && r2 == o.r2 && r == o.r && type == o.type;
    }
};

std::ostream& operator<<(std::ostream& os, const HermitianR& r);

// The 2047 cusp rows in canonical order: first the 1024 zero_two matrices
// (10-bit pattern t = 0..1023, bit 0 -> r1, bit 1 -> r2, bits 2..9 -> the
// f-coordinates of r, entries 2*bit), then the 1023 nonzero zero_one
// matrices (same pattern map with entries = bit, t = 1..1023).
const std::vector<HermitianR>& enumerate_cusp_R();

// R[g] = r1 N(h1) + r2 N(h2) + tr((conj(h1) * r) * h2), exact.
long r_bracket(const HermitianR& R, const IntegralOctave& h1,
               const IntegralOctave& h2);

// True iff r1 h1 + r h2 and conj(r) h1 + r2 h2 both lie in 2 O(Z).
// Depends only on (h1, h2) mod 2.
bool rg_even(const HermitianR& R, const IntegralOctave& h1,
             const IntegralOctave& h2);

// Matrix entry for the delta characteristic a (low byte = h1 bits, high
// byte = h2 bits, {0,1} lifts): 255 when rg_even fails, otherwise
// r_bracket mod 4 (the power of i; well-defined exactly because of the
// evenness guard).
std::uint8_t numerator_entry(const HermitianR& R, std::uint16_t a);

// sum over all 2^16 residues g mod 2 of (-1)^{R[g]}.
long denominator_sum(const HermitianR& R);

struct CuspMatrix {
    std::uint32_t rows = 0, cols = 0;
    std::vector<std::uint8_t> entries;      // row-major, rows*cols bytes
    std::vector<std::int64_t> denominators; // one per row

    std::uint8_t at(std::size_t row, std::size_t col) const {
        return entries[row * cols + col];
    }
};

// The full 2047 x 65536 table plus denominators, deterministic row order
// (enumerate_cusp_R) and bit-exact for any thread count.  threads <= 0
// means: environment variable OCTT_THREADS if set, else the hardware count.
CuspMatrix build_cusp_matrix(int threads = 0);

// Binary file format, little-endian: "OCTT", u32 version = 1, u32 rows,
// u32 cols, entry bytes row-major, then per-row signed 64-bit denominators.
void write_cusp_matrix(const std::string& path, const CuspMatrix& m);
CuspMatrix read_cusp_matrix(const std::string& path);

// ---------------------------------------------------------------------------
// Exact cyclotomic cross-check oracle.  Values live in Z[x]/(x^L + 1) with
// x = e^{pi i / L} (L a divisor-friendly small integer chosen as the lcm of
// the exponent denominators), scaled by the rational prefactor s^-8 N^-16.
// ---------------------------------------------------------------------------

struct CycValue {
    Rat prefactor;
    long half_order = 1;     // L
    std::vector<Int> coeffs; // length L, index k stands for x^k

    bool operator==(const CycValue& o) const {
        return prefactor == o.prefactor && half_order == o.half_order &&
               coeffs == o.coeffs;
    }
    bool operator!=(const CycValue& o) const { return !(*this == o); }
};

std::ostream& operator<<(std::ostream& os, const CycValue& v);

// Exact ring injection into Z[x]/(x^{L'} + 1) for L | L' (x -> x^{L'/L}).
CycValue cyc_lift(const CycValue& v, long half_order);

// s^-8 N^-16 sum over g in the coordinate section (active coordinate
// indices, residues 0..N-1 each, remaining coordinates zero) of
// phi(g) e^{pi i s R[g]} with rational Hermitian data (s1, s2, r).
// Direct summation; errors when N^|active| exceeds the term budget or
// s = 0.  Cross-validation only -- the production path is the reduced
// byte matrix above.
CycValue cusp_value_general(
    const std::function<Int(const std::array<long, 16>&)>& phi, const Rat& s,
    const Rat& r1, const Rat& r2, const Octave& r, long n_mod,
    const std::vector<int>& active_coords, long term_budget = 1L << 20);

} // namespace octt

#endif
