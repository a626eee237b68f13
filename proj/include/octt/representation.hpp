#ifndef OCTT_REPRESENTATION_HPP
#define OCTT_REPRESENTATION_HPP

#include <cstdint>

#include "octt/clifford.hpp"
#include "octt/linalg.hpp"
#include "octt/octave.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// 8x8 matrix representation attached to the octave algebra.
//
//   L_a = matrix of left multiplication x -> a*x in the e-basis
//         (column k holds the e-coordinates of a*e_k);
//   P(a) = L_a - tr(a) * I.
//
// P satisfies P(e0) = -I, P(e_i) skew with P(e_i)^2 = -I and
// P(e_i)P(e_j) = -P(e_j)P(e_i) for 1 <= i != j <= 7, P(a)'P(a) = N(a) I,
// and P(-conj(a)) = L_a.  These make a -> P(a) a vector-to-matrix map whose
// pairwise products represent the even Clifford algebra of the octave space:
// the algebra map fixed by  e0*e_j -> P(e_j)  and  e_i*e_j -> P(e_i)P(e_j).
// ---------------------------------------------------------------------------

RatMat left_mult_matrix(const Octave& a);
RatMat p_matrix(const Octave& a);

// Q(a) = (tr(conj(f_i) * a * f_j))_{ij}, the f-basis bilinear matrix of a;
// equals 2 F L_a F' and in particular Q(e0) = S.
RatMat q_matrix(const Octave& a);

// Image of an even element of the canonical rank-8 Clifford algebra under
// the monomial pair map above (pairs taken in ascending index order).
// Errors if x is odd-graded or lives in a different Gram space.
// Multiplicativity and hom(x') = hom(x)' are certified by the test suite,
// not assumed.
RatMat even_hom_to_m8(const CliffordElement& x);

// The grade-1 Clifford embedding of f_i in the canonical rank-8 algebra.
CliffordElement clifford_f(int i);

// Ordered product of cl(f_j) over the set bits of `subset` (ascending);
// the 128 even-popcount subsets of {0..7} form a Z-basis of the even
// integral order, the 128 subsets of {1..7} index the matrix products
// P(f_{j1})...P(f_{jm}) spanning the image lattice.
CliffordElement f_monomial(std::uint8_t subset);

// Membership in the Z-span of the 128 products P(f_{j1})...P(f_{jm}),
// 1 <= j1 < ... < jm <= 7 (empty product = identity); a rank-64 lattice
// inside the 8x8 rational matrices.
bool in_p_product_lattice(const RatMat& m);
int p_product_lattice_rank();

// Membership in the even integral order: the Z-span of the even f-monomials.
bool in_even_order(const CliffordElement& x);
int even_order_rank();

} // namespace octt

#endif
