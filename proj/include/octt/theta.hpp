#ifndef OCTT_THETA_HPP
#define OCTT_THETA_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "octt/linalg.hpp"
#include "octt/octave.hpp"
#include "octt/siegel.hpp"
#include "octt/spin4.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// Numerical layer: truncated theta series on the 10-dimensional tube domain
// attached to the rank-12 quadratic space of spin4.hpp, the degree-16
// Siegel half-space they restrict from, and the floating-point cross-checks
// tying the two group actions together.  All arithmetic here is double
// precision; everything exact stays in the other modules.
// ---------------------------------------------------------------------------

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;

// A point of the tube domain: two half-plane coordinates and a complex
// octave, subject to Im z1 > 0 and Im(z1) Im(z2) - N(Im zf) > 0 (then
// Im z2 > 0 follows).  Corresponds to the projective isotropic vector
// (z1, z2, N(zf) - z1 z2, 1, -zf) in the slot order h1, h2, h3, h4, e0..e7
// of so_gram(); the h4 slot is the affine normalization.  The dictionary
// (which hyperbolic slot pairs with which coordinate, and the sign of the
// octave block) is pinned down uniquely by the generator actions decoded
// from the symplectic side, and is re-certified by the equivariance suite.
struct OrthPoint {
    Cplx z1{0.0, 1.0};
    Cplx z2{0.0, 1.0};
    COctave zf{};
};

bool in_h10(const OrthPoint& z);

// Chart twist applied around orth_action when matching it against the
// symplectic side.  minus_conj sends zf -> -conj(zf), which flips the sign
// of the e0-coordinate and keeps e1..e7; norms and the domain are preserved.
// Exactly one of the two choices makes the intertwining diagram commute
// (discover_calibration finds it); the mismatch of the other one stems from
// the tr(a)*S difference between the two quadratic-matrix flavours of
// representation.hpp.
enum class Chart { identity, minus_conj };

OrthPoint chart_apply(Chart c, const OrthPoint& z);

// Period matrix [[z1*S, Q(zf)], [Q(zf)', z2*S]] with Q the complex-linear
// extension of q_matrix.  Errors unless z lies in the domain; verifies that
// the imaginary part is positive definite (symmetry is exact by
// construction).
CMat j_point(const OrthPoint& z);

// Symmetry within tolerance plus positive-definite imaginary part.
bool is_siegel_point(const CMat& z, double sym_tol = 1e-12);

// Fractional action (A z + B)(C z + D)^{-1} of an exact 32x32 symplectic
// matrix on the half-space, symmetrized against roundoff.  Errors if m is
// not symplectic, z is not a half-space point, or C z + D is numerically
// singular (condition-number guard); checks that the image stays in the
// half-space.
CMat siegel_action(const RatMat& m, const CMat& z);

// Projective action of an exact 12x12 isometry of so_gram() on the domain:
// applies o to (z1, z2, N(zf) - z1 z2, 1, -zf), rescales by the h4 slot t
// of the image and returns the new point together with t (the factor of
// automorphy of weight-one forms is 1/t).  Errors if o does not preserve
// the gram matrix, if the image leaves the domain (component-swapping
// isometries), or if the h4 slot vanishes (image at the infinite cusp).
std::pair<OrthPoint, Cplx> orth_action(const RatMat& o, const OrthPoint& z);

// Norm cutoffs for the two octave components of a lattice pair.
struct TruncationBound {
    long max_norm1 = 6;
    long max_norm2 = 6;
};

// A truncated series value, the number of lattice points summed, and an
// upper bound for the absolute value of the omitted tail (+infinity when
// the decay is too weak for the geometric estimate to close).
struct ThetaValue {
    Cplx value{};
    long terms = 0;
    double tail = 0.0;
};

// Characteristics mod 2 are packed in 16 bits: bit i (0..7) is the i-th
// f-coordinate parity of the first octave component, bit 8+i of the second.
// This matches the column indexing of the cusp matrix.
std::uint8_t f_parity(const IntegralOctave& h);

// Sum of e^{pi i z[g]/2} over integer vectors g in the fixed residue class
// chi mod 2, truncated to pairs of octave coordinate blocks of norm at most
// the bound (the f-coordinate cubes of the two blocks are enumerated
// through the norm shells of the integral octaves).  z must be a half-space
// point.
ThetaValue theta_siegel(std::uint16_t chi, const CMat& z,
                        const TruncationBound& b = {});

// Sum of phi(h) e^{pi i (N(h1) z1 + N(h2) z2 + tr(conj(h1) zf h2))} over
// integral octave pairs in the class chi mod 2 with N(h_i) bounded; equals
// theta_siegel(chi, j_point(z)) for matched truncation supports.
ThetaValue theta_restricted(std::uint16_t chi, const OrthPoint& z,
                            const TruncationBound& b = {});

// Upper bound for the omitted tail of either sum at this half-space point:
// every omitted pair has joint norm s = N(h1) + N(h2) exceeding the smaller
// cutoff, Im z[g]/2 >= c s with c the smallest generalized eigenvalue of
// Im z against the doubled gram matrix, and the number of pairs of joint
// norm s is the coefficient count r16(s) (convolution square of the rank-8
// shell counts).  The bound sums r16(s) e^{-pi c s} exactly for 400 values
// of s and closes with a geometric majorant of the remainder.
double theta_tail_bound(const CMat& z, const TruncationBound& b);

// Shell count of the integral octaves: 1 for n = 0, else 240 * sigma_3(n)
// (even unimodular rank-8 lattice; cross-checked against enumerate_by_norm
// in the test suite).
double shell_count_r8(long n);

// Exact is_spin / embed_j data of one generator, cached for repeated
// equivariance evaluations.
struct GeneratorImages {
    GeneratorSpec spec;
    RatMat orth;      // 12x12 orthogonal image
    RatMat big;       // 32x32 symplectic image
};

GeneratorImages generator_images(const GeneratorSpec& g);

// Max-entry distance between siegel_action(big, j_point(z)) and
// j_point(chart_apply(c, orth_action(orth, chart_apply(c, z)))).
double equivariance_residual(const GeneratorImages& g, const OrthPoint& z,
                             Chart c);
double equivariance_residual(const GeneratorSpec& g, const OrthPoint& z,
                             Chart c);

// The generator battery used by verification: the inversion, the scalar
// upper translations, and upper/lower translations by every f-basis vector
// (19 generators).
std::vector<GeneratorSpec> generator_battery();

// Random domain point at moderate height: Im z1, Im z2 uniform in [0.5, 2],
// real parts in [-1, 1], zf with real parts in [-0.5, 0.5] and imaginary
// part rescaled so that Im(z1) Im(z2) - N(Im zf) >= 0.25.
OrthPoint sample_point(std::mt19937_64& rng);

// Runs the residual over the whole battery on a deterministic sample of
// points for both charts and returns the unique chart whose worst residual
// is below tol; errors unless exactly one qualifies.
Chart discover_calibration(std::uint64_t seed = 2026, double tol = 1e-9);

} // namespace octt

#endif
