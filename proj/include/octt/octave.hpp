#ifndef OCTT_OCTAVE_HPP
#define OCTT_OCTAVE_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "octt/linalg.hpp"
#include "octt/rational.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// The octave (octonion) algebra O = R^8 with basis e0..e7, e0 the two-sided
// unit, multiplication given by a fixed 8x8 table (stored as index/sign pairs
// and self-checked in the test suite).  Storage basis is e; the integral order
// O(Z) = Z f0 + ... + Z f7 uses the second basis
//     f0 = e0, f1 = e1, f2 = e2, f3 = e3,
//     f4 = (e1+e2+e3-e4)/2,     f5 = (-e0-e1-e4+e5)/2,
//     f6 = (-e0+e1-e2+e6)/2,    f7 = (-e0+e2+e4+e7)/2,
// in which all coordinates of integral octaves are integers.  With the norm
// N(x) = sum x_i^2 (multiplicative) the order is an even unimodular rank-8
// lattice with Gram matrix S = (tr(conj(f_i)*f_j)) = 2FF'.
// ---------------------------------------------------------------------------

// Multiplication table access: e_i * e_k = mul_sign(i,k) * e_{mul_index(i,k)}.
int mul_index(int i, int k);
int mul_sign(int i, int k);

struct Octave {
    std::array<Rat, 8> e{}; // coordinates over e0..e7; exact rationals

    Octave() = default;
    static Octave unit() { Octave x; x.e[0] = 1; return x; }
    static Octave basis(int i) { Octave x; x.e[i] = 1; return x; }

    bool operator==(const Octave& o) const { return e == o.e; }
    bool operator!=(const Octave& o) const { return !(*this == o); }

    Octave operator+(const Octave& o) const;
    Octave operator-(const Octave& o) const;
    Octave operator-() const;
    Octave operator*(const Octave& o) const; // the table product
    Octave operator*(const Rat& s) const;

    bool is_zero() const;
};

std::ostream& operator<<(std::ostream& os, const Octave& x);

// conj(x) fixes e0 and negates e1..e7; conj(x*y) = conj(y)*conj(x).
Octave conj(const Octave& x);

// N(x) = conj(x)*x = sum of squared e-coordinates; N(xy) = N(x)N(y).
Rat norm(const Octave& x);

// tr(x) = x + conj(x) = 2*x0.
Rat trace(const Octave& x);

// The common value tr((a*b)*c) = tr(a*(b*c)); also invariant under cyclic
// rotation of the three arguments.
Rat triple_trace(const Octave& a, const Octave& b, const Octave& c);

// ---------------------------------------------------------------------------
// Basis data.  F is the 8x8 matrix whose rows are f0..f7 in e-coordinates;
// 2F is integral.  S = 2FF' is the (even, unimodular, positive definite)
// Gram matrix of the order.
// ---------------------------------------------------------------------------
const RatMat& f_basis_matrix();        // F
const IntMat& f_basis_matrix_doubled();// 2F, integer entries
const IntMat& gram_s();                // S computed as (tr(conj(f_i)*f_j))
const IntMat& gram_s_inverse();        // S^-1 (integral since det S = 1)

enum class BasisDirection { e_to_f, f_to_e };

// Exact linear change of coordinates between the e- and f-bases.
std::array<Rat, 8> basis_convert(const std::array<Rat, 8>& coords,
                                 BasisDirection dir);

// ---------------------------------------------------------------------------
// Integral octaves: integer coordinates over f0..f7.  The fast integer
// product works on doubled e-coordinates (always integral) and converts back
// with g = S^-1 * (2F) * e, exact for ring elements.
// ---------------------------------------------------------------------------
struct IntegralOctave {
    std::array<long, 8> f{}; // coordinates over f0..f7

    static IntegralOctave basis(int i) { IntegralOctave x; x.f[i] = 1; return x; }

    bool operator==(const IntegralOctave& o) const { return f == o.f; }
    bool operator!=(const IntegralOctave& o) const { return !(*this == o); }
    // Lexicographic coordinate order (canonical enumeration order).
    bool operator<(const IntegralOctave& o) const { return f < o.f; }

    IntegralOctave operator+(const IntegralOctave& o) const;
    IntegralOctave operator-(const IntegralOctave& o) const;
    IntegralOctave operator-() const;
    IntegralOctave operator*(const IntegralOctave& o) const;

    bool is_zero() const;

    std::array<long, 8> e_doubled() const; // 2x in e-coordinates
    Octave to_octave() const;
};

std::ostream& operator<<(std::ostream& os, const IntegralOctave& x);

// Octave -> integral octave; errors unless all f-coordinates are integers.
IntegralOctave to_integral(const Octave& x);
bool is_integral(const Octave& x);

IntegralOctave iconj(const IntegralOctave& x);
long inorm(const IntegralOctave& x);
long itrace(const IntegralOctave& x);
// tr(conj(a)*b), the Z-bilinear lattice pairing; equals a' S b on f-coords.
long ipair(const IntegralOctave& a, const IntegralOctave& b);
long itriple_trace(const IntegralOctave& a, const IntegralOctave& b,
                        const IntegralOctave& c);

// All integral octaves of norm exactly n, in lexicographic f-coordinate
// order.  Exact enumeration: box bound |g_i| <= ceil(sqrt(2n*(S^-1)_ii))
// (the form value is g'Sg = 2n) with exact partial-form pruning and final
// check.  Counts: n=0 -> 1, n=1 -> 240, n=2 -> 2160.
std::vector<IntegralOctave> enumerate_by_norm(long n);

// Cached shell of norm exactly n (enumerate_by_norm result, shared; element
// reference remains valid as the cache grows).
const std::vector<IntegralOctave>& norm_shell(long n);

// ---------------------------------------------------------------------------
// Complex octaves (floating): the same table product extended C-bilinearly.
// Used only by the numerical theta layer.
// ---------------------------------------------------------------------------
struct COctave {
    std::array<std::complex<double>, 8> e{};

    COctave() = default;
    explicit COctave(const Octave& x);

    COctave operator+(const COctave& o) const;
    COctave operator-(const COctave& o) const;
    COctave operator*(const COctave& o) const;
    COctave operator*(std::complex<double> s) const;
};

COctave cconj(const COctave& x);
std::complex<double> cnorm(const COctave& x);  // C-bilinear: sum of squares
std::complex<double> ctrace(const COctave& x); // 2*x0
// tr((conj(a)*z)*b) for integral a, b and complex z, via the C-bilinear
// pairing tr(w*v) = 2(w0 v0 - sum_{i>=1} w_i v_i) with w = conj(a)*z.
std::complex<double> ctriple_trace(const IntegralOctave& a, const COctave& z,
                                   const IntegralOctave& b);

} // namespace octt

#endif
