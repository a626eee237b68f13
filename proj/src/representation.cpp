#include "octt/representation.hpp"

#include <bit>
#include <vector>

#include "octt/check.hpp"

namespace octt {

RatMat left_mult_matrix(const Octave& a) {
    RatMat m(8, 8);
    for (int k = 0; k < 8; ++k) {
        Octave col = a * Octave::basis(k);
        for (int i = 0; i < 8; ++i) m(i, k) = col.e[i];
    }
    return m;
}

RatMat p_matrix(const Octave& a) {
    RatMat m = left_mult_matrix(a);
    Rat t = trace(a);
    if (t != 0)
        for (int i = 0; i < 8; ++i) m(i, i) -= t;
    return m;
}

RatMat q_matrix(const Octave& a) {
    const RatMat& F = f_basis_matrix();
    // Entrywise definition ...
    RatMat q(8, 8);
    for (int i = 0; i < 8; ++i) {
        Octave fi;
        for (int k = 0; k < 8; ++k) fi.e[k] = F(i, k);
        for (int j = 0; j < 8; ++j) {
            Octave fj;
            for (int k = 0; k < 8; ++k) fj.e[k] = F(j, k);
            q(i, j) = trace(conj(fi) * (a * fj));
        }
    }
    // ... cross-checked against the closed form Q(a) = 2 F L_a F'.
    RatMat closed = (F * left_mult_matrix(a) * F.transpose()) * Rat(2);
    LOGIC_CHECK(q == closed);
    return q;
}

namespace {

// P(e_i), cached.
const RatMat& p_basis(int i) {
    static const std::vector<RatMat> cache = [] {
        std::vector<RatMat> v;
        v.reserve(8);
        for (int k = 0; k < 8; ++k) v.push_back(p_matrix(Octave::basis(k)));
        return v;
    }();
    return cache[i];
}

// Image of one even monomial: ascending bits split into adjacent pairs,
// pair (0,j) -> P(e_j), pair (i,j) with i >= 1 -> P(e_i) P(e_j).
RatMat monomial_image(std::uint16_t mask) {
    RatMat img = RatMat::identity(8);
    int bits[16], nb = 0;
    for (int b = 0; b < 16; ++b)
        if (mask & (1u << b)) bits[nb++] = b;
    LOGIC_CHECK(nb % 2 == 0);
    for (int t = 0; t + 1 < nb; t += 2) {
        int i = bits[t], j = bits[t + 1];
        img = (i == 0) ? img * p_basis(j) : img * (p_basis(i) * p_basis(j));
    }
    return img;
}

// Shared machinery for Z-lattices of rational vectors: scale the spanning
// set by the least common denominator D, keep the row HNF; a candidate lies
// in the lattice iff its denominators divide D and D*candidate reduces to
// zero against the HNF.
struct RatLattice {
    Int den = 1;
    IntMat hnf{0, 0};

    explicit RatLattice(const std::vector<std::vector<Rat>>& span) {
        std::size_t cols = span.at(0).size();
        for (const auto& row : span)
            for (const Rat& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                                             x.get_den().get_mpz_t());
        IntMat m(span.size(), cols);
        for (std::size_t i = 0; i < span.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = to_int(span[i][j] * den);
        hnf = hnf_rows(m);
    }

    bool contains(const std::vector<Rat>& v) const {
        DOMAIN_CHECK(v.size() == hnf.cols());
        std::vector<Int> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            Rat s = v[i] * den;
            if (!is_integer(s)) return false;
            w[i] = to_int(s);
        }
        return in_row_lattice(w, hnf);
    }
};

std::vector<Rat> flatten(const RatMat& m) {
    std::vector<Rat> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

const RatLattice& p_product_lattice() {
    static const RatLattice lat = [] {
        std::vector<std::vector<Rat>> span;
        span.reserve(128);
        for (int subset = 0; subset < 256; subset += 2) { // no bit 0
            RatMat prod = RatMat::identity(8);
            for (int j = 1; j < 8; ++j)
                if (subset & (1 << j)) {
                    std::array<Rat, 8> fe{};
                    const RatMat& F = f_basis_matrix();
                    for (int k = 0; k < 8; ++k) fe[k] = F(j, k);
                    Octave fj;
                    fj.e = fe;
                    prod = prod * p_matrix(fj);
                }
            span.push_back(flatten(prod));
        }
        return RatLattice(span);
    }();
    return lat;
}

const RatLattice& even_order_lattice() {
    static const RatLattice lat = [] {
        std::vector<std::vector<Rat>> span;
        span.reserve(128);
        for (int subset = 0; subset < 256; ++subset) {
            if (std::popcount(unsigned(subset)) % 2 != 0) continue;
            CliffordElement m = f_monomial(std::uint8_t(subset));
            // Coordinates over the 128 even e-monomial masks in mask order.
            std::vector<Rat> row;
            row.reserve(128);
            for (int em = 0; em < 256; ++em)
                if (std::popcount(unsigned(em)) % 2 == 0)
                    row.push_back(m.coefficient(CliffordElement::Mask(em)));
            span.push_back(std::move(row));
        }
        return RatLattice(span);
    }();
    return lat;
}

} // namespace

RatMat even_hom_to_m8(const CliffordElement& x) {
    DOMAIN_CHECK(x.space() == octave_gram_space());
    DOMAIN_CHECK(x.is_even());
    RatMat out(8, 8);
    for (const auto& [mask, c] : x.terms()) out = out + monomial_image(mask) * c;
    return out;
}

CliffordElement clifford_f(int i) {
    DOMAIN_CHECK(0 <= i && i < 8);
    const RatMat& F = f_basis_matrix();
    Octave fi;
    for (int k = 0; k < 8; ++k) fi.e[k] = F(i, k);
    return clifford_vector(fi);
}

CliffordElement f_monomial(std::uint8_t subset) {
    CliffordElement prod = CliffordElement::scalar(1);
    for (int j = 0; j < 8; ++j)
        if (subset & (1 << j)) prod = prod * clifford_f(j);
    return prod;
}

bool in_p_product_lattice(const RatMat& m) {
    DOMAIN_CHECK(m.rows() == 8 && m.cols() == 8);
    return p_product_lattice().contains(flatten(m));
}

int p_product_lattice_rank() { return int(p_product_lattice().hnf.rows()); }

int even_order_rank() { return int(even_order_lattice().hnf.rows()); }

bool in_even_order(const CliffordElement& x) {
    DOMAIN_CHECK(x.space() == octave_gram_space());
    if (!x.is_even()) return false;
    std::vector<Rat> v;
    v.reserve(128);
    for (int em = 0; em < 256; ++em)
        if (std::popcount(unsigned(em)) % 2 == 0)
            v.push_back(x.coefficient(CliffordElement::Mask(em)));
    return even_order_lattice().contains(v);
}

} // namespace octt
