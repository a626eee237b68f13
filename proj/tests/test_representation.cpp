#include <doctest.h>

#include <octt/representation.hpp>

#include <random>

#include "oracles.hpp"

using namespace octt;

namespace {
Octave e(int i) { return Octave::basis(i); }

Octave f_rat(int i) {
    const RatMat& F = f_basis_matrix();
    Octave x;
    for (int j = 0; j < 8; ++j) x.e[j] = F(i, j);
    return x;
}

// The entrywise trace formula (tr(conj(e_i) * a * e_k) / 2), which recovers
// the left-multiplication matrix, not P.
RatMat trace_formula_matrix(const Octave& a) {
    RatMat m(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k)
            m(i, k) = trace(conj(e(i)) * (a * e(k))) / 2;
    return m;
}

// Random even element of the canonical algebra built from vector pairs.
CliffordElement random_even(std::mt19937_64& rng, int pairs = 2) {
    CliffordElement x = CliffordElement::scalar(0);
    for (int t = 0; t < pairs; ++t)
        x = x + clifford_vector(oracle::random_octave(rng)) *
                    clifford_vector(oracle::random_octave(rng));
    return x;
}

// Random element of the even integral order: a small Z-combination of even
// f-monomials.
CliffordElement random_order_element(std::mt19937_64& rng, int terms = 3) {
    std::uniform_int_distribution<int> subset(0, 255);
    std::uniform_int_distribution<long> coef(-3, 3);
    CliffordElement x = CliffordElement::scalar(0);
    for (int t = 0; t < terms; ++t) {
        int s = subset(rng);
        if (__builtin_popcount(unsigned(s)) & 1) s ^= 1;
        x = x + f_monomial(std::uint8_t(s)) * Rat(coef(rng));
    }
    return x;
}
}  // namespace

TEST_CASE("left multiplication matrix and P on the basis") {
    CHECK(left_mult_matrix(e(0)) == RatMat::identity(8));
    // The trace formula gives L, and P deliberately differs from it by
    // -tr(a) I; at a = e0 that flips the sign of the identity.
    CHECK(trace_formula_matrix(e(0)) == RatMat::identity(8));
    CHECK(p_matrix(e(0)) == -RatMat::identity(8));
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Octave a = oracle::random_octave(rng);
        CHECK(trace_formula_matrix(a) == left_mult_matrix(a));
        RatMat expect = left_mult_matrix(a);
        Rat t = trace(a);
        for (int i = 0; i < 8; ++i) expect(i, i) -= t;
        CHECK(p_matrix(a) == expect);
    }
    for (int i = 1; i < 8; ++i) CHECK(p_matrix(e(i)) == left_mult_matrix(e(i)));
}

TEST_CASE("P relations: skew squares, anticommutation, norm, conjugation") {
    RatMat id = RatMat::identity(8);
    for (int i = 1; i < 8; ++i) {
        RatMat pi = p_matrix(e(i));
        CHECK(pi.transpose() == -pi);
        CHECK(pi * pi == -id);
        for (int j = i + 1; j < 8; ++j) {
            RatMat pj = p_matrix(e(j));
            CHECK(pi * pj == -(pj * pi));
        }
    }
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        Octave a = oracle::random_octave(rng);
        RatMat pa = p_matrix(a);
        CHECK(pa.transpose() * pa == id * norm(a));
        // P(-conj(a)) = L_a.
        CHECK(p_matrix(-conj(a)) == left_mult_matrix(a));
    }
}

TEST_CASE("Q matrix: f-basis bilinear form of an octave") {
    const IntMat& S = gram_s();
    RatMat q0 = q_matrix(e(0));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) CHECK(q0(i, j) == Rat(S(i, j)));
    std::mt19937_64 rng(33);
    const RatMat& F = f_basis_matrix();
    for (int trial = 0; trial < 50; ++trial) {
        Octave a = oracle::random_octave(rng);
        RatMat q = q_matrix(a);
        // 2 F P(a) F' = Q(a) - tr(a) S.
        RatMat lhs = (F * p_matrix(a) * F.transpose()) * Rat(2);
        RatMat rhs = q;
        Rat t = trace(a);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) rhs(i, j) -= t * Rat(S(i, j));
        CHECK(lhs == rhs);
    }
    // Integral arguments give integral entries matching the triple trace.
    for (int trial = 0; trial < 50; ++trial) {
        IntegralOctave a = oracle::random_integral(rng);
        RatMat q = q_matrix(a.to_octave());
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                CHECK(is_integer(q(i, j)));
                CHECK(q(i, j) == Rat(itriple_trace(
                                     iconj(IntegralOctave::basis(i)), a,
                                     IntegralOctave::basis(j))));
            }
    }
}

TEST_CASE("even homomorphism: base cases and the closed form on vector pairs") {
    CHECK(even_hom_to_m8(CliffordElement::scalar(1)) == RatMat::identity(8));
    CHECK(even_hom_to_m8(e0_times(e(1))) == p_matrix(e(1)));
    for (int i = 1; i < 8; ++i)
        CHECK(even_hom_to_m8(e0_times(e(i))) == p_matrix(e(i)));
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; ++trial) {
        Octave a = oracle::random_octave(rng), b = oracle::random_octave(rng);
        // hom(cl(a) cl(b)) = -P(conj(a)) P(b), bilinear closed form.
        CHECK(even_hom_to_m8(clifford_vector(a) * clifford_vector(b)) ==
              -(p_matrix(conj(a)) * p_matrix(b)));
    }
    CHECK_THROWS_AS(even_hom_to_m8(clifford_vector(e(1))), std::domain_error);
    IntMat g(2, 2);
    g(0, 1) = g(1, 0) = 1;
    GramSpace hyp(2, g);
    CHECK_THROWS_AS(even_hom_to_m8(CliffordElement::scalar(1, hyp)),
                    std::domain_error);
}

TEST_CASE("even homomorphism is multiplicative and transposes the involution") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 200; ++trial) {
        CliffordElement x = random_even(rng), y = random_even(rng);
        CHECK(even_hom_to_m8(x * y) == even_hom_to_m8(x) * even_hom_to_m8(y));
        CHECK(even_hom_to_m8(x.involution()) == even_hom_to_m8(x).transpose());
    }
}

TEST_CASE("the P-product span is a rank-64 matrix lattice") {
    CHECK(p_product_lattice_rank() == 64);
    CHECK(in_p_product_lattice(RatMat::identity(8)));
    for (int j = 1; j < 8; ++j) CHECK(in_p_product_lattice(p_matrix(f_rat(j))));
    CHECK(in_p_product_lattice(p_matrix(f_rat(5)) * p_matrix(f_rat(6))));
    // Denominator 3 can never appear in the span.
    CHECK(!in_p_product_lattice(RatMat::identity(8) * frac(1, 3)));
}

TEST_CASE("even integral order: ring closure and hom images in the lattice") {
    CHECK(even_order_rank() == 128);
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 50; ++trial) {
        CliffordElement x = random_order_element(rng),
                        y = random_order_element(rng);
        CHECK(in_even_order(x));
        CHECK(in_even_order(x * y)); // closed under multiplication
        CHECK(in_even_order(x.involution()));
        CHECK(in_p_product_lattice(even_hom_to_m8(x)));
    }
    CHECK(in_even_order(CliffordElement::scalar(1)));
    CHECK(!in_even_order(CliffordElement::scalar(frac(1, 3))));
    CHECK(!in_even_order(clifford_vector(e(1)))); // odd
    // e0 e1 = cl(f0) cl(f1) is an order element with e-monomial coordinates.
    CHECK(in_even_order(e0_times(e(1))));
}
