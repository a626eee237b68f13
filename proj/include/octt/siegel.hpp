#ifndef OCTT_SIEGEL_HPP
#define OCTT_SIEGEL_HPP

#include "octt/linalg.hpp"
#include "octt/spin4.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// Degree-16 symplectic layer.  A 4x4 Clifford matrix maps to a 32x32 exact
// rational matrix in two steps: the even homomorphism into M8 applied
// entrywise (hom32), then conjugation by the block-diagonal change of basis
// built from sqrt2*F on the first sixteen coordinates and its inverse
// transpose on the last sixteen.  The sqrt2 factors cancel, leaving the
// quadrant rule on 8x8 blocks H:
//
//   upper-left  F H F^-1        upper-right  2 F H F'
//   lower-left  (1/2) F'^-1 H F^-1   lower-right  F'^-1 H F'
//
// so that spin elements with integral parameters land in Sp(32,Z).
// ---------------------------------------------------------------------------

// Entrywise even homomorphism: 4x4 of 8x8 blocks, no basis change.
RatMat hom32(const CPlusMatrix4& m);

// The conjugated symplectic image; errors unless m passes is_spin.
RatMat embed_j(const CPlusMatrix4& m);

// The standard degree-16 symplectic form [[0, I],[-I, 0]].
const RatMat& symplectic_form_32();

bool is_integral_matrix(const RatMat& m);

// Exact test of M' J_std M = J_std (no integrality requirement).
bool is_symplectic_32(const RatMat& m);

// Congruence placement of a 32x32 matrix M = [[A,B],[C,D]]:
//   principal_level: largest l in {1,2,4} with M = identity mod l;
//   igusa_12:  M integral symplectic and diag(AB'), diag(CD') even
//              (the theta group);
//   igusa_24:  M = identity mod 2 and diag(AB'/2), diag(CD'/2) even.
// A non-integral or non-symplectic input reports all-false / level 0.
struct LevelReport {
    bool integral_symplectic = false;
    int principal_level = 0;
    bool igusa_12 = false;
    bool igusa_24 = false;
};
LevelReport classify_level(const RatMat& m);

// The degree-16 shadow of conjugate_by_scaling: B-block halved, C-block
// doubled; satisfies embed_j(conjugate_by_scaling(m)) = scale applied to
// embed_j(m).
RatMat scale_blocks_32(const RatMat& m);

} // namespace octt

#endif
