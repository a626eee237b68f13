#ifndef OCTT_SPIN4_HPP
#define OCTT_SPIN4_HPP

#include <array>
#include <optional>
#include <utility>

#include "octt/clifford.hpp"
#include "octt/linalg.hpp"
#include "octt/octave.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// 4x4 matrices over the Clifford algebra of the octave space, the ambient
// algebra for the signature-(2,10) spin group: the rank-12 quadratic space
//
//     V = <h1,h2> + <h3,h4> + octaves,   q = ab + cd - N(x),
//
// embeds into these matrices by
//
//     h1 -> e0 (E12 + E43)     h2 -> e0 (-E21 - E34)
//     h3 -> e0 (E14 - E23)     h4 -> e0 (E32 - E41)
//     e0 -> e0 diag(-1,1,-1,1) e_i -> e_i I4   (1 <= i <= 7),
//
// (1-indexed matrix units, entries are grade-1 elements).  The images X_v
// satisfy X_u X_v + X_v X_u = (u,v) I4, so matrix conjugation g X g'
// realizes the orthogonal action of the spin group on V.
// ---------------------------------------------------------------------------

struct CPlusMatrix4 {
    std::array<CliffordElement, 16> a{};

    CliffordElement& at(int i, int j) { return a[std::size_t(4 * i + j)]; }
    const CliffordElement& at(int i, int j) const {
        return a[std::size_t(4 * i + j)];
    }

    static CPlusMatrix4 identity();

    bool operator==(const CPlusMatrix4& o) const { return a == o.a; }
    bool operator!=(const CPlusMatrix4& o) const { return !(*this == o); }

    CPlusMatrix4 operator+(const CPlusMatrix4& o) const;
    CPlusMatrix4 operator-(const CPlusMatrix4& o) const;
    CPlusMatrix4 operator*(const CPlusMatrix4& o) const;
    CPlusMatrix4 operator*(const Rat& s) const;
};

std::ostream& operator<<(std::ostream& os, const CPlusMatrix4& m);

// The twelve images X_v, ordered h1, h2, h3, h4, e0..e7.
const std::array<CPlusMatrix4, 12>& spi_images();

// Gram matrix of V in the same ordering: two hyperbolic planes and -2 I8.
const IntMat& so_gram();

// Entrywise main involution followed by transposition: (m*)_ij = (m_ji)'.
CPlusMatrix4 star(const CPlusMatrix4& m);

// The main involution of the matrix algebra, in 2x2 blocks of 2x2:
// [[a,b],[c,d]]' = [[d*, -b*], [-c*, a*]] with * the star of the block.
CPlusMatrix4 main_involution(const CPlusMatrix4& m);

// m* K m = K for the symplectic form K = [[0, I2],[-I2, 0]] (as a 4x4
// scalar matrix); the Hermitian-symplectic condition.
bool is_hermitian_symplectic(const CPlusMatrix4& m);
const CPlusMatrix4& symplectic_form();

// Spin membership: m' m = 1 and conjugation v -> m X_v m' preserves the
// span of the X_v.  On success returns the 12x12 matrix O of the induced
// orthogonal action (columns = images of the basis, coordinates extracted
// from fixed entry/monomial slots and then re-verified exactly, including
// O' G O = G).  Returns (false, nullopt) otherwise -- also for singular
// input, which simply fails the first identity.
std::pair<bool, std::optional<RatMat>> is_spin(const CPlusMatrix4& m);

// Generators.  The matrix parameter of an octave h is the even element
// e0*h = -h0 + sum_{i>=1} h_i e0 e_i; scalar slots are Clifford scalars.
// Each builder verifies spin membership and throws on failure.
CPlusMatrix4 inversion_generator();
// rows (1,0,s1,h),(0,1,h',s2),(0,0,1,0),(0,0,0,1)
CPlusMatrix4 translation_upper(const Rat& s1, const Rat& s2, const Octave& h);
// rows (1,h,0,0),(0,1,0,0),(0,0,1,0),(0,0,-h',1)
CPlusMatrix4 translation_lower(const Octave& h);

// Parameter record for the generator family (integral parameters).
struct GeneratorSpec {
    enum class Kind { inversion, translation_upper, translation_lower };
    Kind kind = Kind::inversion;
    long s1 = 0, s2 = 0; // scalar slots, translation_upper only
    IntegralOctave h{};  // octave slot, both translation kinds
};
CPlusMatrix4 build_generator(const GeneratorSpec& spec);

// Conjugation by diag(sqrt2 I2, 1/sqrt2 I2) without materializing sqrt2:
// upper-right 2x2 block halved, lower-left doubled.  With assert_integral,
// errors unless every result entry has integer coefficients.
CPlusMatrix4 conjugate_by_scaling(const CPlusMatrix4& m,
                                  bool assert_integral = false);

// m = 1 + 2y entrywise with y in the even integral order.
bool is_identity_mod2_order(const CPlusMatrix4& m);
// Entrywise coefficient parity: diagonal entries 1 mod 2, off-diagonal
// entries with all coefficients even.  Strictly finer than the order-level
// notion, since order elements may have half-integer monomial coefficients.
bool is_identity_mod2_coeffs(const CPlusMatrix4& m);

} // namespace octt

#endif
