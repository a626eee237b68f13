#include "octt/spin4.hpp"

#include "octt/check.hpp"
#include "octt/representation.hpp"

namespace octt {

namespace {

using Mask = CliffordElement::Mask;

CliffordElement cl_scalar(const Rat& c) { return CliffordElement::scalar(c); }

CliffordElement cl_e(int i) { return clifford_vector(Octave::basis(i)); }

} // namespace

CPlusMatrix4 CPlusMatrix4::identity() {
    CPlusMatrix4 m;
    for (int i = 0; i < 4; ++i) m.at(i, i) = cl_scalar(1);
    return m;
}

CPlusMatrix4 CPlusMatrix4::operator+(const CPlusMatrix4& o) const {
    CPlusMatrix4 r;
    for (int k = 0; k < 16; ++k) r.a[std::size_t(k)] = a[std::size_t(k)] + o.a[std::size_t(k)];
    return r;
}

CPlusMatrix4 CPlusMatrix4::operator-(const CPlusMatrix4& o) const {
    CPlusMatrix4 r;
    for (int k = 0; k < 16; ++k) r.a[std::size_t(k)] = a[std::size_t(k)] - o.a[std::size_t(k)];
    return r;
}

CPlusMatrix4 CPlusMatrix4::operator*(const CPlusMatrix4& o) const {
    CPlusMatrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const CliffordElement& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < 4; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + x * o.at(k, j);
            }
        }
    return r;
}

CPlusMatrix4 CPlusMatrix4::operator*(const Rat& s) const {
    CPlusMatrix4 r;
    for (int k = 0; k < 16; ++k) r.a[std::size_t(k)] = a[std::size_t(k)] * s;
    return r;
}

std::ostream& operator<<(std::ostream& os, const CPlusMatrix4& m) {
    for (int i = 0; i < 4; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < 4; ++j)
            os << "(" << m.at(i, j) << ")" << (j == 3 ? "" : " ");
        os << (i == 3 ? "]" : "\n");
    }
    return os;
}

const std::array<CPlusMatrix4, 12>& spi_images() {
    static const std::array<CPlusMatrix4, 12> imgs = [] {
        std::array<CPlusMatrix4, 12> x;
        const CliffordElement e0 = cl_e(0);
        // h1 -> e0 (E12 + E43), h2 -> e0 (-E21 - E34),
        // h3 -> e0 (E14 - E23), h4 -> e0 (E32 - E41); 1-indexed units.
        x[0].at(0, 1) = e0;
        x[0].at(3, 2) = e0;
        x[1].at(1, 0) = -e0;
        x[1].at(2, 3) = -e0;
        x[2].at(0, 3) = e0;
        x[2].at(1, 2) = -e0;
        x[3].at(2, 1) = e0;
        x[3].at(3, 0) = -e0;
        // e0 -> e0 diag(-1,1,-1,1)
        x[4].at(0, 0) = -e0;
        x[4].at(1, 1) = e0;
        x[4].at(2, 2) = -e0;
        x[4].at(3, 3) = e0;
        // e_i -> e_i * I4
        for (int i = 1; i < 8; ++i) {
            const CliffordElement ei = cl_e(i);
            for (int d = 0; d < 4; ++d) x[std::size_t(4 + i)].at(d, d) = ei;
        }
        return x;
    }();
    return imgs;
}

const IntMat& so_gram() {
    static const IntMat g = [] {
        IntMat m(12, 12);
        m(0, 1) = m(1, 0) = 1; // hyperbolic plane h1,h2
        m(2, 3) = m(3, 2) = 1; // hyperbolic plane h3,h4
        for (std::size_t i = 4; i < 12; ++i) m(i, i) = -2;
        return m;
    }();
    return g;
}

CPlusMatrix4 star(const CPlusMatrix4& m) {
    CPlusMatrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = m.at(j, i).involution();
    return r;
}

CPlusMatrix4 main_involution(const CPlusMatrix4& m) {
    // [[a,b],[c,d]] -> [[d*,-b*],[-c*,a*]]: diagonal blocks swap, each block
    // starred in place (transpose within the block plus entrywise involution),
    // off-diagonal blocks negated.
    CPlusMatrix4 r;
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            const int si = (bi == bj) ? 1 - bi : bi;
            const int sj = (bi == bj) ? 1 - bj : bj;
            const Rat sign = (bi == bj) ? 1 : -1;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    r.at(2 * bi + i, 2 * bj + j) =
                        m.at(2 * si + j, 2 * sj + i).involution() * sign;
        }
    return r;
}

const CPlusMatrix4& symplectic_form() {
    static const CPlusMatrix4 k = [] {
        CPlusMatrix4 m;
        m.at(0, 2) = cl_scalar(1);
        m.at(1, 3) = cl_scalar(1);
        m.at(2, 0) = cl_scalar(-1);
        m.at(3, 1) = cl_scalar(-1);
        return m;
    }();
    return k;
}

bool is_hermitian_symplectic(const CPlusMatrix4& m) {
    const CPlusMatrix4& k = symplectic_form();
    return star(m) * k * m == k;
}

std::pair<bool, std::optional<RatMat>> is_spin(const CPlusMatrix4& m) {
    const CPlusMatrix4 minv = main_involution(m);
    if (minv * m != CPlusMatrix4::identity()) return {false, std::nullopt};

    // m' m = 1, so conjugation is X -> m X m'.  Read the coefficient of each
    // basis image off a slot where only that image has a nonzero monomial:
    //   h1: entry (0,1), monomial e0       h2: -(1,0), e0
    //   h3: entry (0,3), monomial e0       h4:  (2,1), e0
    //   e0: -(0,0), e0                     e_i: (0,0), e_i
    // then certify the guess by exact re-expansion.
    const auto& imgs = spi_images();
    RatMat o(12, 12);
    for (int v = 0; v < 12; ++v) {
        const CPlusMatrix4 y = m * imgs[std::size_t(v)] * minv;
        std::array<Rat, 12> c;
        c[0] = y.at(0, 1).coefficient(Mask(1));
        c[1] = -y.at(1, 0).coefficient(Mask(1));
        c[2] = y.at(0, 3).coefficient(Mask(1));
        c[3] = y.at(2, 1).coefficient(Mask(1));
        c[4] = -y.at(0, 0).coefficient(Mask(1));
        for (int i = 1; i < 8; ++i)
            c[std::size_t(4 + i)] = y.at(0, 0).coefficient(Mask(1 << i));

        CPlusMatrix4 recon;
        for (int w = 0; w < 12; ++w)
            if (c[std::size_t(w)] != 0)
                recon = recon + imgs[std::size_t(w)] * c[std::size_t(w)];
        if (recon != y) return {false, std::nullopt};
        for (int w = 0; w < 12; ++w) o(std::size_t(w), std::size_t(v)) = c[std::size_t(w)];
    }

    // Conjugation preserves the Clifford relations, so the exact re-expansion
    // above already forces O' G O = G; keep the check as a consistency gate.
    RatMat g(12, 12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) g(i, j) = Rat(so_gram()(i, j));
    LOGIC_CHECK(o.transpose() * g * o == g);
    return {true, o};
}

namespace {

CPlusMatrix4 checked(CPlusMatrix4 m) {
    LOGIC_CHECK(is_spin(m).first);
    return m;
}

} // namespace

CPlusMatrix4 inversion_generator() {
    // rows (0,0,1,0),(0,0,0,1),(-1,0,0,0),(0,-1,0,0)
    CPlusMatrix4 m;
    m.at(0, 2) = cl_scalar(1);
    m.at(1, 3) = cl_scalar(1);
    m.at(2, 0) = cl_scalar(-1);
    m.at(3, 1) = cl_scalar(-1);
    return checked(m);
}

CPlusMatrix4 translation_upper(const Rat& s1, const Rat& s2, const Octave& h) {
    CPlusMatrix4 m = CPlusMatrix4::identity();
    m.at(0, 2) = cl_scalar(s1);
    m.at(0, 3) = e0_times(h);
    m.at(1, 2) = e0_times(conj(h)); // (e0 h)' = e0 conj(h)
    m.at(1, 3) = cl_scalar(s2);
    return checked(m);
}

CPlusMatrix4 translation_lower(const Octave& h) {
    CPlusMatrix4 m = CPlusMatrix4::identity();
    m.at(0, 1) = e0_times(h);
    m.at(3, 2) = -e0_times(conj(h));
    return checked(m);
}

CPlusMatrix4 build_generator(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorSpec::Kind::inversion:
            return inversion_generator();
        case GeneratorSpec::Kind::translation_upper:
            return translation_upper(Rat(spec.s1), Rat(spec.s2),
                                     spec.h.to_octave());
        case GeneratorSpec::Kind::translation_lower:
            return translation_lower(spec.h.to_octave());
    }
    DOMAIN_CHECK(false);
    return {};
}

CPlusMatrix4 conjugate_by_scaling(const CPlusMatrix4& m, bool assert_integral) {
    CPlusMatrix4 r = m;
    const Rat half = frac(1, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j) {
            r.at(i, j) = r.at(i, j) * half;
            r.at(j, i) = r.at(j, i) * Rat(2);
        }
    if (assert_integral)
        for (const CliffordElement& x : r.a) DOMAIN_CHECK(x.is_integral());
    return r;
}

bool is_identity_mod2_order(const CPlusMatrix4& m) {
    const Rat half = frac(1, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CliffordElement d = m.at(i, j);
            if (i == j) d = d - cl_scalar(1);
            if (!in_even_order(d * half)) return false;
        }
    return true;
}

bool is_identity_mod2_coeffs(const CPlusMatrix4& m) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            CliffordElement d = m.at(i, j);
            if (i == j) d = d - cl_scalar(1);
            if (!d.is_integral()) return false;
            for (const auto& term : d.terms())
                if (to_int(term.second) % 2 != 0) return false;
        }
    return true;
}

} // namespace octt
