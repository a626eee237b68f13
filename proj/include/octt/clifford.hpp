#ifndef OCTT_CLIFFORD_HPP
#define OCTT_CLIFFORD_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "octt/linalg.hpp"
#include "octt/octave.hpp"
#include "octt/rational.hpp"

namespace octt {

// ---------------------------------------------------------------------------
// Clifford algebra of a lattice with prescribed symmetric Gram matrix, with
// defining relations  ab + ba = (a,b)  for vectors a, b (so a*a = (a,a)/2).
// Monomials are canonical ascending-index products of basis vectors encoded
// as bitmasks; products are computed by right insertion with sign flips and
// bilinear contraction terms, which is valid for arbitrary symmetric integer
// Gram matrices (not only diagonal ones).
//
// The canonical instance used throughout is rank 8 with Gram -2*identity,
// i.e. the basis vectors square to -1 and anticommute: the Clifford algebra
// of the octave space carrying the negated norm form.
// ---------------------------------------------------------------------------

struct GramSpace {
    int rank = 0;
    IntMat gram; // rank x rank, symmetric

    GramSpace() = default;
    GramSpace(int r, IntMat g);

    bool operator==(const GramSpace& o) const {
        return rank == o.rank && gram == o.gram;
    }
    bool operator!=(const GramSpace& o) const { return !(*this == o); }
};

// The rank-8 space with Gram -2*identity (shared instance).
const GramSpace& octave_gram_space();

class CliffordElement {
  public:
    using Mask = std::uint16_t;

    CliffordElement() : space_(&octave_gram_space()) {}
    explicit CliffordElement(const GramSpace& s) : space_(&s) {}

    static CliffordElement scalar(const Rat& c,
                                  const GramSpace& s = octave_gram_space());
    // The basis monomial for an ascending-index set given as a bitmask.
    static CliffordElement monomial(Mask m, const Rat& c = 1,
                                    const GramSpace& s = octave_gram_space());
    // The grade-1 element with the given coordinates.
    static CliffordElement embed_vector(const std::vector<Rat>& v,
                                        const GramSpace& s = octave_gram_space());

    const GramSpace& space() const { return *space_; }
    const std::map<Mask, Rat>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_even() const;            // only even-popcount monomials
    bool is_integral() const;        // all coefficients in Z
    Rat coefficient(Mask m) const;   // 0 if absent

    CliffordElement operator+(const CliffordElement& o) const;
    CliffordElement operator-(const CliffordElement& o) const;
    CliffordElement operator-() const;
    CliffordElement operator*(const CliffordElement& o) const; // cl_mul
    CliffordElement operator*(const Rat& s) const;

    bool operator==(const CliffordElement& o) const;
    bool operator!=(const CliffordElement& o) const { return !(*this == o); }

    // Sum of the terms of monomial degree exactly k.
    CliffordElement grade(int k) const;

    // The main involution: anti-automorphism with a' = -a on vectors; on a
    // grade-k monomial it multiplies by (-1)^k * (-1)^{k(k-1)/2}
    //                                 = (-1)^{k(k+1)/2}.
    CliffordElement involution() const;

    // True iff x - 1 has all (integral) coefficients even; errors on
    // non-integral input.
    bool is_one_mod2() const;

  private:
    void add_term(Mask m, const Rat& c);

    const GramSpace* space_;
    std::map<Mask, Rat> terms_;
};

std::ostream& operator<<(std::ostream& os, const CliffordElement& x);

// Convenience for the canonical rank-8 instance: the grade-1 vector with the
// e-coordinates of an octave.
CliffordElement clifford_vector(const Octave& x);

// The even element e0 * a (Clifford product of the two grade-1 embeddings);
// these generate the even subalgebra.
CliffordElement e0_times(const Octave& a);

} // namespace octt

#endif
