#include <doctest.h>

#include <octt/clifford.hpp>

#include <random>
#include <vector>

#include "oracles.hpp"

using namespace octt;

namespace {
CliffordElement cl_e(int i) {
    return CliffordElement::monomial(CliffordElement::Mask(1) << i);
}

// Random sparse element of the canonical rank-8 algebra.
CliffordElement random_element(std::mt19937_64& rng, bool even_only = false) {
    std::uniform_int_distribution<int> mask(0, 255);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    CliffordElement x;
    for (int t = 0; t < 4; ++t) {
        int m = mask(rng);
        if (even_only && (__builtin_popcount(unsigned(m)) & 1)) m ^= 1;
        x = x + CliffordElement::monomial(CliffordElement::Mask(m),
                                          frac(num(rng), den(rng)));
    }
    return x;
}
}  // namespace

TEST_CASE("defining relations in the canonical rank-8 algebra") {
    CliffordElement one = CliffordElement::scalar(1);
    for (int i = 0; i < 8; ++i) {
        CHECK(cl_e(i) * cl_e(i) == -one); // gram(i,i)/2 = -1
        for (int j = 0; j < 8; ++j) {
            if (i == j) continue;
            CHECK(cl_e(i) * cl_e(j) + cl_e(j) * cl_e(i) == CliffordElement{});
        }
    }
    CHECK((cl_e(1) * cl_e(2)) * (cl_e(1) * cl_e(2)) == -one);
    CHECK(cl_e(1) * cl_e(2) ==
          CliffordElement::monomial(0b110)); // ascending product = monomial
    CHECK(cl_e(2) * cl_e(1) == -CliffordElement::monomial(0b110));
}

TEST_CASE("vector embedding squares to the quadratic form") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        Octave a = oracle::random_octave(rng);
        CliffordElement v = clifford_vector(a);
        // v^2 = (v,v)/2 = -N(a) in the canonical algebra (Gram -2 id).
        CHECK(v * v == CliffordElement::scalar(-norm(a)));
    }
}

TEST_CASE("associativity and distributivity") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        CliffordElement a = random_element(rng), b = random_element(rng),
                        c = random_element(rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) * c == a * c + b * c);
    }
}

TEST_CASE("main involution: signs, involutive, anti-automorphism") {
    // Grade k picks up (-1)^{k(k+1)/2}: k = 0,1,2,3,4 -> +,-,-,+,+.
    CHECK(CliffordElement::scalar(5).involution() == CliffordElement::scalar(5));
    CHECK(cl_e(3).involution() == -cl_e(3));
    CHECK((cl_e(1) * cl_e(2)).involution() == -(cl_e(1) * cl_e(2)));
    CliffordElement m3 = CliffordElement::monomial(0b1011);
    CHECK(m3.involution() == m3 * Rat(1)); // grade 3: sign +
    CliffordElement m4 = CliffordElement::monomial(0b11011);
    CHECK(m4.involution() == m4);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        CliffordElement a = random_element(rng), b = random_element(rng);
        CHECK(a.involution().involution() == a);
        CHECK((a * b).involution() == b.involution() * a.involution());
    }
}

TEST_CASE("grades, parity, integrality") {
    CliffordElement x = CliffordElement::scalar(2) + cl_e(1) * cl_e(2) +
                        cl_e(4) + CliffordElement::monomial(0b1111, frac(1, 2));
    CHECK(x.grade(0) == CliffordElement::scalar(2));
    CHECK(x.grade(1) == cl_e(4));
    CHECK(x.grade(2) == cl_e(1) * cl_e(2));
    CHECK(x.grade(3).is_zero());
    CHECK(!x.is_even());
    CHECK((x - cl_e(4)).is_even());
    CHECK(!x.is_integral());
    CHECK((x - CliffordElement::monomial(0b1111, frac(1, 2))).is_integral());

    // Even-subalgebra closure under products.
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        CliffordElement a = random_element(rng, true),
                        b = random_element(rng, true);
        CHECK(a.is_even());
        CHECK((a * b).is_even());
    }
}

TEST_CASE("congruence to 1 mod 2") {
    CliffordElement one = CliffordElement::scalar(1);
    CHECK(one.is_one_mod2());
    CHECK((one + (cl_e(1) * cl_e(2)) * Rat(2)).is_one_mod2());
    CHECK(!(one + cl_e(1) * cl_e(2)).is_one_mod2());
    CHECK(!(cl_e(1) * cl_e(2)).is_one_mod2());
    CHECK(!CliffordElement::scalar(2).is_one_mod2());
    CHECK(CliffordElement::scalar(3).is_one_mod2());
    CHECK_THROWS_AS((one * frac(1, 2)).is_one_mod2(), std::domain_error);
}

TEST_CASE("non-diagonal Gram matrices: hyperbolic plane relations") {
    // Rank-2 space with (a,b) = [[0,1],[1,0]]: isotropic vectors u, v with
    // uv + vu = 1.
    IntMat g(2, 2);
    g(0, 1) = 1;
    g(1, 0) = 1;
    GramSpace hyp(2, g);
    CliffordElement u = CliffordElement::monomial(0b01, 1, hyp);
    CliffordElement v = CliffordElement::monomial(0b10, 1, hyp);
    CliffordElement one = CliffordElement::scalar(1, hyp);
    CHECK(u * u == CliffordElement(hyp));
    CHECK(v * v == CliffordElement(hyp));
    CHECK(u * v + v * u == one);
    CHECK((u * v) * (u * v) == u * v); // idempotent
    // (uv - vu)^2 = 1.
    CliffordElement w = u * v - v * u;
    CHECK(w * w == one);

    // Mixing spaces is an error.
    CHECK_THROWS_AS(u * cl_e(1), std::domain_error);
}

TEST_CASE("rank-12 space: two hyperbolic planes plus negated octave form") {
    IntMat g(12, 12);
    g(0, 1) = g(1, 0) = 1;
    g(2, 3) = g(3, 2) = 1;
    for (int i = 4; i < 12; ++i) g(i, i) = -2;
    GramSpace sp(12, g);
    auto vec = [&sp](int i) {
        return CliffordElement::monomial(CliffordElement::Mask(1) << i, 1, sp);
    };
    CliffordElement one = CliffordElement::scalar(1, sp);
    CHECK(vec(0) * vec(1) + vec(1) * vec(0) == one);
    CHECK(vec(2) * vec(3) + vec(3) * vec(2) == one);
    CHECK(vec(4) * vec(4) == -one);
    CHECK(vec(0) * vec(4) + vec(4) * vec(0) == CliffordElement(sp));
    // General vector squares to its quadratic form value:
    // q(a h1 + b h2 + c h3 + d h4 + x) = ab + cd - N(x).
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rat> coords(12);
        for (auto& c : coords) c = d(rng);
        CliffordElement w = CliffordElement::embed_vector(coords, sp);
        Rat q = coords[0] * coords[1] + coords[2] * coords[3];
        for (int i = 4; i < 12; ++i) q -= coords[i] * coords[i];
        CHECK(w * w == CliffordElement::scalar(q, sp));
    }
}
