#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "octt/check.hpp"
#include "octt/linalg.hpp"
#include "octt/octave.hpp"
#include "octt/representation.hpp"
#include "octt/siegel.hpp"
#include "octt/theta.hpp"

#include "oracles.hpp"

using namespace octt;

namespace {

const Cplx kI(0.0, 1.0);

OrthPoint pt(Cplx z1, Cplx z2, const COctave& zf = COctave{}) {
    OrthPoint z;
    z.z1 = z1;
    z.z2 = z2;
    z.zf = zf;
    return z;
}

COctave e_coeff(int k, Cplx c) {
    COctave z;
    z.e[std::size_t(k)] = c;
    return z;
}

double s_entry(int i, int j) {
    return double(to_long(gram_s()(std::size_t(i), std::size_t(j))));
}

RatMat so_gram_rat() {
    RatMat g(12, 12);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) g(i, j) = Rat(so_gram()(i, j));
    return g;
}

double point_distance(const OrthPoint& a, const OrthPoint& b) {
    double d = std::max(std::abs(a.z1 - b.z1), std::abs(a.z2 - b.z2));
    for (int k = 0; k < 8; ++k)
        d = std::max(d, std::abs(a.zf.e[std::size_t(k)] - b.zf.e[std::size_t(k)]));
    return d;
}

// Doubled gram matrix scaled by it: the block-diagonal half-space point used
// for limit checks.
CMat scaled_gram_point(double t) {
    CMat z = CMat::Zero(16, 16);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            z(i, j) = t * kI * s_entry(i, j);
            z(8 + i, 8 + j) = t * kI * s_entry(i, j);
        }
    return z;
}

} // namespace

TEST_CASE("domain membership, charts, and sampling") {
    CHECK(in_h10(pt(kI, kI)));
    CHECK_FALSE(in_h10(pt(kI, kI, e_coeff(0, kI))));   // boundary: 1*1 - 1
    CHECK_FALSE(in_h10(pt(-kI, kI)));
    CHECK_FALSE(in_h10(pt(kI, -kI)));
    CHECK(in_h10(pt(kI, kI, e_coeff(3, Cplx(0.0, 0.5)))));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const OrthPoint z = sample_point(rng);
        CHECK(in_h10(z));
        CHECK(z.z1.imag() >= 0.5);
        CHECK(z.z1.imag() <= 2.0);
        CHECK(z.z2.imag() >= 0.5);
        CHECK(z.z2.imag() <= 2.0);
        double ny = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double y = z.zf.e[std::size_t(k)].imag();
            ny += y * y;
        }
        CHECK(z.z1.imag() * z.z2.imag() - ny >= 0.25 * (1.0 - 1e-12));

        // The nontrivial chart flips exactly the e0-coordinate and is an
        // involution preserving the domain and the bilinear norm.
        const OrthPoint w = chart_apply(Chart::minus_conj, z);
        CHECK(w.z1 == z.z1);
        CHECK(w.zf.e[0] == -z.zf.e[0]);
        for (int k = 1; k < 8; ++k) CHECK(w.zf.e[std::size_t(k)] == z.zf.e[std::size_t(k)]);
        CHECK(in_h10(w));
        CHECK(std::abs(cnorm(w.zf) - cnorm(z.zf)) < 1e-12);
        CHECK(point_distance(chart_apply(Chart::minus_conj, w), z) == 0.0);
        CHECK(point_distance(chart_apply(Chart::identity, z), z) == 0.0);
    }
}

TEST_CASE("characteristic packing by f-parity") {
    for (int i = 0; i < 8; ++i)
        CHECK(f_parity(IntegralOctave::basis(i)) == (1 << i));
    IntegralOctave x;
    for (int i = 0; i < 8; ++i) x.f[std::size_t(i)] = -3 + 2 * i; // all odd
    CHECK(f_parity(x) == 255);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const IntegralOctave a = oracle::random_integral(rng, 4);
        const std::uint8_t p = f_parity(a);
        for (int i = 0; i < 8; ++i)
            CHECK((a.f[std::size_t(i)] - ((p >> i) & 1)) % 2 == 0);
    }
}

TEST_CASE("period matrix of a domain point") {
    // Diagonal case: both blocks i*S, zero coupling.
    const CMat j0 = j_point(pt(kI, kI));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const bool same = (i < 8) == (j < 8);
            const Cplx want = same ? kI * s_entry(i % 8, j % 8) : Cplx(0.0);
            CHECK(std::abs(j0(i, j) - want) < 1e-14);
        }
    CHECK(is_siegel_point(j0));

    // The e0-coupling block is proportional to the gram matrix.
    const Cplx c(0.25, 0.4);
    const CMat j1 = j_point(pt(2.0 * kI, 2.0 * kI, e_coeff(0, c)));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(std::abs(j1(i, 8 + j) - c * s_entry(i, j)) < 1e-13);

    // Generic coupling agrees with the exact bilinear matrix of the same
    // octave, extended complex-linearly.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const Octave a = oracle::random_octave(rng, 3);
        COctave zf;
        for (int k = 0; k < 8; ++k)
            zf.e[std::size_t(k)] = 0.1 * to_double(a.e[std::size_t(k)]);
        const CMat j = j_point(pt(3.0 * kI, 3.0 * kI, zf));
        const RatMat q = q_matrix(a);
        for (int i = 0; i < 8; ++i)
            for (int j2 = 0; j2 < 8; ++j2)
                CHECK(std::abs(j(i, 8 + j2) -
                               0.1 * to_double(q(std::size_t(i), std::size_t(j2)))) < 1e-12);
    }

}

TEST_CASE("period matrix stays in the half-space") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const CMat j = j_point(sample_point(rng));
        CHECK((j - j.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(is_siegel_point(j));
    }
    // Boundary points are rejected.
    CHECK_THROWS_AS(j_point(pt(kI, kI, e_coeff(0, kI))), std::domain_error);

    // Predicate rejects asymmetry, wrong size, and indefinite imaginary part.
    CMat z = scaled_gram_point(1.0);
    CHECK(is_siegel_point(z));
    z(0, 1) += 1e-6;
    CHECK_FALSE(is_siegel_point(z));
    CHECK_FALSE(is_siegel_point(CMat::Identity(8, 8)));
    CMat neg = -scaled_gram_point(1.0);
    CHECK_FALSE(is_siegel_point(neg));
}

TEST_CASE("fractional action on the half-space") {
    std::mt19937_64 rng(17);
    const CMat z = j_point(sample_point(rng));

    // Identity acts trivially.
    const CMat fixed = siegel_action(RatMat::identity(32), z);
    CHECK((fixed - z).cwiseAbs().maxCoeff() < 1e-13);

    // The standard form matrix acts by z -> -z^{-1}: on diagonal imaginary
    // points i*D this is i*D^{-1}.
    CMat diag = CMat::Zero(16, 16);
    for (int i = 0; i < 16; ++i) diag(i, i) = kI * (1.0 + 0.25 * i);
    const CMat inv = siegel_action(symplectic_form_32(), diag);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const Cplx want = (i == j) ? kI / (1.0 + 0.25 * i) : Cplx(0.0);
            CHECK(std::abs(inv(i, j) - want) < 1e-13);
        }

    // Generator images keep the point in the half-space.
    std::mt19937_64 rng2(19);
    for (const GeneratorSpec& g : generator_battery()) {
        const GeneratorImages gi = generator_images(g);
        const CMat moved = siegel_action(gi.big, j_point(sample_point(rng2)));
        CHECK(is_siegel_point(moved));
        CHECK((moved - moved.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }

    // Error paths: non-symplectic matrix, ill-conditioned denominator.
    RatMat bad = RatMat::identity(32);
    bad(0, 0) = 2;
    CHECK_THROWS_AS(siegel_action(bad, z), std::domain_error);
    CMat huge = CMat::Zero(16, 16);
    for (int i = 0; i < 16; ++i) huge(i, i) = kI;
    huge(0, 0) += 1e12;
    CHECK(is_siegel_point(huge));
    CHECK_THROWS_AS(siegel_action(symplectic_form_32(), huge),
                    std::domain_error);
}

TEST_CASE("projective orthogonal action") {
    std::mt19937_64 rng(23);
    const OrthPoint z = sample_point(rng);

    // Identity fixes everything with factor 1.
    const auto [same, t1] = orth_action(RatMat::identity(12), z);
    CHECK(point_distance(same, z) < 1e-15);
    CHECK(std::abs(t1 - 1.0) < 1e-15);

    // The scalar translations shift z1 respectively z2 by 1.
    const std::vector<GeneratorSpec> battery = generator_battery();
    const GeneratorSpec tu1 = battery[1];
    const GeneratorSpec tu2 = battery[2];
    REQUIRE(tu1.s1 == 1);
    REQUIRE(tu2.s2 == 1);
    const auto [m1, f1] = orth_action(generator_images(tu1).orth, z);
    CHECK(std::abs(m1.z1 - (z.z1 + 1.0)) < 1e-12);
    CHECK(std::abs(m1.z2 - z.z2) < 1e-12);
    CHECK(point_distance(pt(m1.z1 - 1.0, m1.z2, m1.zf), z) < 1e-12);
    CHECK(std::abs(f1 - 1.0) < 1e-12);
    const auto [m2, f2] = orth_action(generator_images(tu2).orth, z);
    CHECK(std::abs(m2.z2 - (z.z2 + 1.0)) < 1e-12);
    CHECK(std::abs(f2 - 1.0) < 1e-12);

    // Battery images preserve the gram matrix exactly and have det +1.
    const RatMat gram = so_gram_rat();
    for (const GeneratorSpec& g : generator_battery()) {
        const RatMat o = generator_images(g).orth;
        CHECK(o.transpose() * gram * o == gram);
        CHECK(det(o) == 1);
        const auto [w, t] = orth_action(o, sample_point(rng));
        CHECK(in_h10(w));
        CHECK(std::abs(t) > 0.0);
    }

    // Factor-of-automorphy cocycle on composites.
    std::vector<RatMat> os;
    for (const GeneratorSpec& g : generator_battery())
        os.push_back(generator_images(g).orth);
    std::mt19937_64 rng2(29);
    for (int trial = 0; trial < 30; ++trial) {
        const RatMat& o1 = os[rng2() % os.size()];
        const RatMat& o2 = os[rng2() % os.size()];
        const OrthPoint p = sample_point(rng2);
        const auto [p2, t2] = orth_action(o2, p);
        const auto [p12, t12] = orth_action(o1 * o2, p);
        const auto [p1, t1b] = orth_action(o1, p2);
        CHECK(std::abs(t12 - t1b * t2) < 1e-9 * (1.0 + std::abs(t12)));
        CHECK(point_distance(p12, p1) < 1e-9);
    }

    // Error paths: a gram isometry that swaps the two domain components is
    // rejected; a non-isometry is rejected outright.
    RatMat swap = RatMat::identity(12);
    swap(0, 0) = -1;
    swap(1, 1) = -1;
    CHECK_THROWS_AS(orth_action(swap, z), std::domain_error);
    RatMat bad = RatMat::identity(12);
    bad(0, 0) = 2;
    CHECK_THROWS_AS(orth_action(bad, z), std::domain_error);
}

TEST_CASE("equivariance locks a single chart") {
    // The trivial generator commutes in either chart.
    GeneratorSpec trivial;
    trivial.kind = GeneratorSpec::Kind::translation_upper;
    std::mt19937_64 rng(31);
    const OrthPoint z0 = sample_point(rng);
    CHECK(equivariance_residual(trivial, z0, Chart::identity) < 1e-12);
    CHECK(equivariance_residual(trivial, z0, Chart::minus_conj) < 1e-12);

    CHECK(discover_calibration(2026, 1e-9) == Chart::minus_conj);

    // Battery x 12 points (228 pairs): every residual small in the locked
    // chart.
    std::vector<GeneratorImages> gens;
    for (const GeneratorSpec& g : generator_battery())
        gens.push_back(generator_images(g));
    std::vector<OrthPoint> pts;
    std::mt19937_64 rng2(37);
    for (int k = 0; k < 12; ++k) pts.push_back(sample_point(rng2));
    double worst = 0.0;
    for (const GeneratorImages& g : gens)
        for (const OrthPoint& p : pts)
            worst = std::max(worst, equivariance_residual(g, p, Chart::minus_conj));
    CHECK(worst < 1e-9);

    // The wrong chart fails loudly exactly on translations whose octave
    // parameter has a nonzero e0-part (trace-carrying directions).
    double worst_id = 0.0;
    for (const GeneratorImages& g : gens)
        worst_id = std::max(worst_id,
                            equivariance_residual(g, pts[0], Chart::identity));
    CHECK(worst_id > 1e-3);
    GeneratorSpec tu0;
    tu0.kind = GeneratorSpec::Kind::translation_upper;
    tu0.h = IntegralOctave::basis(0); // f0 = e0, trace 2
    CHECK(equivariance_residual(tu0, pts[0], Chart::identity) > 1e-3);
    GeneratorSpec tl5;
    tl5.kind = GeneratorSpec::Kind::translation_lower;
    tl5.h = IntegralOctave::basis(5); // trace -1
    CHECK(equivariance_residual(tl5, pts[0], Chart::identity) > 1e-3);
    // Trace-free direction: the charts agree on this generator alone.
    GeneratorSpec tu3;
    tu3.kind = GeneratorSpec::Kind::translation_upper;
    tu3.h = IntegralOctave::basis(3);
    CHECK(equivariance_residual(tu3, pts[0], Chart::identity) < 1e-9);
}

TEST_CASE("restriction identity against the half-space series") {
    // Deep point, trivial characteristic: the series is 1 plus an
    // exponentially small correction, and both routes agree.
    const OrthPoint deep = pt(2.0 * kI, 2.0 * kI);
    const TruncationBound b4{4, 4};
    const ThetaValue r0 = theta_restricted(0, deep, b4);
    const ThetaValue s0 = theta_siegel(0, j_point(deep), b4);
    CHECK(std::abs(r0.value - 1.0) < 1e-6);
    CHECK(std::abs(r0.value - s0.value) < 1e-10);
    CHECK(r0.terms == s0.terms);
    CHECK(r0.terms > 0);

    // Random characteristics and points, matched truncation supports.
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint16_t chi = std::uint16_t(rng() & 0xffff);
        const OrthPoint z = sample_point(rng);
        const ThetaValue r = theta_restricted(chi, z, b4);
        const ThetaValue s = theta_siegel(chi, j_point(z), b4);
        CHECK(r.terms == s.terms);
        CHECK(std::abs(r.value - s.value) < 1e-8);
    }

    // A few trials at the default truncation.
    for (int trial = 0; trial < 5; ++trial) {
        const std::uint16_t chi = std::uint16_t(rng() & 0xffff);
        const OrthPoint z = sample_point(rng);
        const ThetaValue r = theta_restricted(chi, z);
        const ThetaValue s = theta_siegel(chi, j_point(z));
        CHECK(r.terms == s.terms);
        CHECK(std::abs(r.value - s.value) < 1e-8);
    }
}

TEST_CASE("series limits and tail estimates") {
    // Huge-scale block point: the zero characteristic is dominated by g = 0.
    const CMat big = scaled_gram_point(40.0);
    const ThetaValue t0 = theta_siegel(0, big);
    CHECK(std::abs(t0.value - 1.0) < 1e-12);
    CHECK(t0.tail < 1e-12);
    const ThetaValue t1 = theta_siegel(513, big);
    CHECK(std::abs(t1.value) < 1.0);
    CHECK(std::abs(t1.value) < 1e-12);

    // Large heights on the domain side: the trivial characteristic tends to
    // 1, every other one to 0.
    const OrthPoint tall = pt(10.0 * kI, 10.0 * kI);
    CHECK(std::abs(theta_restricted(0, tall).value - 1.0) < 1e-10);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        std::uint16_t chi = std::uint16_t(rng() & 0xffff);
        if (chi == 0) chi = 1;
        CHECK(std::abs(theta_restricted(chi, tall).value) < 1e-10);
    }

    // Doubling the cutoff moves the value by less than the reported tail
    // bound, itself below 1e-9 at moderate height.
    COctave zf;
    zf.e[2] = 0.125;
    zf.e[6] = -0.25;
    const OrthPoint mod = pt(Cplx(0.1, 2.2), Cplx(-0.2, 2.3), zf);
    for (const std::uint16_t chi : {std::uint16_t(0), std::uint16_t(0x2d81)}) {
        const ThetaValue lo = theta_restricted(chi, mod, TruncationBound{5, 5});
        const ThetaValue hi = theta_restricted(chi, mod, TruncationBound{10, 10});
        CHECK(lo.tail < 1e-9);
        CHECK(std::abs(hi.value - lo.value) < 1e-10);
        CHECK(std::abs(hi.value - lo.value) <= lo.tail + 1e-15);
    }

    // Tail estimate behaviour at height one: finite, positive, decreasing
    // in the cutoff.
    const CMat z1 = j_point(pt(kI, kI));
    const double tail6 = theta_tail_bound(z1, TruncationBound{6, 6});
    const double tail8 = theta_tail_bound(z1, TruncationBound{8, 8});
    CHECK(tail6 > 0.0);
    CHECK(tail6 < 1.0);
    CHECK(tail8 < tail6);
}

TEST_CASE("shell counts match the enumeration and the majorant") {
    for (long n = 0; n <= 6; ++n)
        CHECK(shell_count_r8(n) == double(norm_shell(n).size()));
    // The remainder majorant used by the tail bound covers the exact
    // convolution counts.
    std::vector<double> r8(301);
    for (long n = 0; n <= 300; ++n) r8[std::size_t(n)] = shell_count_r8(n);
    for (long s = 1; s <= 300; ++s) {
        double r16 = 0.0;
        for (long k = 0; k <= s; ++k)
            r16 += r8[std::size_t(k)] * r8[std::size_t(s - k)];
        CHECK(r16 <= 1200.0 * std::pow(double(s), 7.0));
    }
}
