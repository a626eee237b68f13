#include "octt/theta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "octt/check.hpp"
#include "octt/representation.hpp"

namespace octt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double imag_norm(const COctave& x) {
    double s = 0.0;
    for (const Cplx& c : x.e) s += c.imag() * c.imag();
    return s;
}

// q_matrix of the e-basis vectors as double matrices; the complex-linear
// extension Q(zf) is assembled from these.
const std::array<Eigen::Matrix<double, 8, 8>, 8>& q_basis() {
    static const std::array<Eigen::Matrix<double, 8, 8>, 8> tab = [] {
        std::array<Eigen::Matrix<double, 8, 8>, 8> t;
        for (int k = 0; k < 8; ++k) {
            const RatMat q = q_matrix(Octave::basis(k));
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    t[std::size_t(k)](i, j) = to_double(q(std::size_t(i), std::size_t(j)));
        }
        return t;
    }();
    return tab;
}

// S as doubles (q_basis()[0] equals it, but name the intent separately).
const Eigen::Matrix<double, 8, 8>& s_double() {
    static const Eigen::Matrix<double, 8, 8> s = [] {
        Eigen::Matrix<double, 8, 8> m;
        const IntMat& g = gram_s();
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                m(i, j) = double(to_long(g(std::size_t(i), std::size_t(j))));
        return m;
    }();
    return s;
}

double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

double min_imag_eigenvalue(const CMat& z, double* max_eig = nullptr) {
    const Eigen::MatrixXd im = z.imag();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (im + im.transpose()));
    LOGIC_CHECK(es.info() == Eigen::Success);
    if (max_eig) *max_eig = es.eigenvalues().cwiseAbs().maxCoeff();
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd block_to_double(const RatMat& m, std::size_t i0,
                                std::size_t j0, std::size_t n) {
    Eigen::MatrixXd out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(Eigen::Index(i), Eigen::Index(j)) = to_double(m(i0 + i, j0 + j));
    return out;
}

// Octaves of norm <= max_norm in the given f-parity class, concatenated in
// shell order; seg[k]..seg[k+1] indexes the norm-k segment.
struct ClassList {
    std::vector<IntegralOctave> h;
    std::vector<long> n;
    std::vector<std::size_t> seg;
};

ClassList parity_class(std::uint8_t par, long max_norm) {
    ClassList out;
    out.seg.push_back(0);
    for (long k = 0; k <= max_norm; ++k) {
        for (const IntegralOctave& x : norm_shell(k))
            if (f_parity(x) == par) {
                out.h.push_back(x);
                out.n.push_back(k);
            }
        out.seg.push_back(out.h.size());
    }
    return out;
}

const RatMat& so_gram_rat() {
    static const RatMat g = [] {
        RatMat m(12, 12);
        const IntMat& gi = so_gram();
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j)
                m(i, j) = Rat(gi(i, j));
        return m;
    }();
    return g;
}

double unit_real(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

} // namespace

bool in_h10(const OrthPoint& z) {
    const double y1 = z.z1.imag(), y2 = z.z2.imag();
    return y1 > 0.0 && y1 * y2 - imag_norm(z.zf) > 0.0;
}

OrthPoint chart_apply(Chart c, const OrthPoint& z) {
    if (c == Chart::identity) return z;
    OrthPoint out = z;
    out.zf.e[0] = -out.zf.e[0];
    return out;
}

std::uint8_t f_parity(const IntegralOctave& h) {
    std::uint8_t m = 0;
    for (int i = 0; i < 8; ++i)
        m = std::uint8_t(m | ((h.f[std::size_t(i)] & 1L) << i));
    return m;
}

CMat j_point(const OrthPoint& z) {
    DOMAIN_CHECK(in_h10(z));
    Eigen::Matrix<Cplx, 8, 8> q = Eigen::Matrix<Cplx, 8, 8>::Zero();
    for (int k = 0; k < 8; ++k) q += z.zf.e[std::size_t(k)] * q_basis()[std::size_t(k)];
    CMat out(16, 16);
    out.topLeftCorner(8, 8) = z.z1 * s_double();
    out.bottomRightCorner(8, 8) = z.z2 * s_double();
    out.topRightCorner(8, 8) = q;
    out.bottomLeftCorner(8, 8) = q.transpose();
    // The imaginary part is positive definite on the open domain; only
    // points too close to the boundary for double precision fail here.
    DOMAIN_CHECK(is_siegel_point(out));
    return out;
}

bool is_siegel_point(const CMat& z, double sym_tol) {
    if (z.rows() != 16 || z.cols() != 16) return false;
    const double scale = 1.0 + max_abs(z);
    if (max_abs(z - z.transpose()) > sym_tol * scale) return false;
    double max_eig = 0.0;
    const double min_eig = min_imag_eigenvalue(z, &max_eig);
    return min_eig > 1e-12 * std::max(1.0, max_eig);
}

CMat siegel_action(const RatMat& m, const CMat& z) {
    DOMAIN_CHECK(m.rows() == 32 && m.cols() == 32);
    DOMAIN_CHECK(is_symplectic_32(m));
    DOMAIN_CHECK(is_siegel_point(z));
    const Eigen::MatrixXd a = block_to_double(m, 0, 0, 16);
    const Eigen::MatrixXd b = block_to_double(m, 0, 16, 16);
    const Eigen::MatrixXd c = block_to_double(m, 16, 0, 16);
    const Eigen::MatrixXd d = block_to_double(m, 16, 16, 16);
    const CMat num = a * z + b;
    const CMat den = c * z + d;
    Eigen::FullPivLU<CMat> lu(den);
    DOMAIN_CHECK(lu.isInvertible());
    const CMat den_inv = lu.inverse();
    const double cond = den.cwiseAbs().rowwise().sum().maxCoeff() *
                        den_inv.cwiseAbs().rowwise().sum().maxCoeff();
    DOMAIN_CHECK(cond < 1e12);
    const CMat w = num * den_inv;
    // Symmetry is a theorem for symplectic m; losing it means the linear
    // solve degraded beyond the condition guard.
    LOGIC_CHECK(max_abs(w - w.transpose()) <= 1e-6 * (1.0 + max_abs(w)));
    CMat sym = 0.5 * (w + w.transpose());
    LOGIC_CHECK(is_siegel_point(sym));
    return sym;
}

std::pair<OrthPoint, Cplx> orth_action(const RatMat& o, const OrthPoint& z) {
    DOMAIN_CHECK(o.rows() == 12 && o.cols() == 12);
    DOMAIN_CHECK(o.transpose() * so_gram_rat() * o == so_gram_rat());
    DOMAIN_CHECK(in_h10(z));
    std::array<Cplx, 12> v{}, w{};
    v[0] = z.z1;
    v[1] = z.z2;
    v[2] = cnorm(z.zf) - z.z1 * z.z2;
    v[3] = 1.0;
    for (int k = 0; k < 8; ++k) v[std::size_t(4 + k)] = -z.zf.e[std::size_t(k)];
    double vmax = 0.0;
    for (const Cplx& x : v) vmax = std::max(vmax, std::abs(x));
    for (std::size_t i = 0; i < 12; ++i) {
        Cplx acc = 0.0;
        for (std::size_t j = 0; j < 12; ++j)
            acc += to_double(o(i, j)) * v[j];
        w[i] = acc;
    }
    const Cplx t = w[3];
    DOMAIN_CHECK(std::abs(t) > 1e-12 * vmax);
    OrthPoint out;
    out.z1 = w[0] / t;
    out.z2 = w[1] / t;
    for (int k = 0; k < 8; ++k) out.zf.e[std::size_t(k)] = -w[std::size_t(4 + k)] / t;
    DOMAIN_CHECK(in_h10(out));
    // The image vector stays isotropic, so its h3 slot must reproduce
    // N(zf') - z1' z2' after the rescaling.
    const Cplx star = cnorm(out.zf) - out.z1 * out.z2;
    const double wmax = 1.0 + std::abs(star) + std::abs(w[2] / t);
    LOGIC_CHECK(std::abs(w[2] / t - star) <= 1e-8 * wmax);
    return {out, t};
}

double shell_count_r8(long n) {
    DOMAIN_CHECK(n >= 0);
    if (n == 0) return 1.0;
    double sigma3 = 0.0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) sigma3 += double(d) * double(d) * double(d);
    return 240.0 * sigma3;
}

double theta_tail_bound(const CMat& z, const TruncationBound& b) {
    DOMAIN_CHECK(b.max_norm1 > 0 && b.max_norm2 > 0);
    DOMAIN_CHECK(is_siegel_point(z));
    Eigen::MatrixXd gram2 = Eigen::MatrixXd::Zero(16, 16);
    gram2.topLeftCorner(8, 8) = s_double();
    gram2.bottomRightCorner(8, 8) = s_double();
    const Eigen::MatrixXd im = 0.5 * (z.imag() + z.imag().transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(im, gram2);
    LOGIC_CHECK(ges.info() == Eigen::Success);
    // Im z[g]/2 >= c (N(h1) + N(h2)) for every integer vector g = (g1, g2).
    const double c = ges.eigenvalues().minCoeff();
    if (!(c > 0.0)) return std::numeric_limits<double>::infinity();
    const long smin = std::min(b.max_norm1, b.max_norm2) + 1;
    const long window = 400;
    const long stop = smin + window;
    std::vector<double> r8(std::size_t(stop) + 1);
    for (long n = 0; n <= stop; ++n) r8[std::size_t(n)] = shell_count_r8(n);
    double tail = 0.0;
    for (long s = smin; s <= stop; ++s) {
        double r16 = 0.0;
        for (long k = 0; k <= s; ++k)
            r16 += r8[std::size_t(k)] * r8[std::size_t(s - k)];
        tail += r16 * std::exp(-kPi * c * double(s));
    }
    // Remainder past the window: r16(s) <= 1200 s^7 (sigma_3(n) < 1.21 n^3
    // gives r8(n) < 291 n^3, and the convolution integral adds a factor
    // 1/140), and the majorant 1200 s^7 e^{-pi c s} decays geometrically
    // with ratio at most e^{-pi c} (1 + 1/s)^7.
    const double s0 = double(stop + 1);
    const double ratio = std::exp(-kPi * c) * std::pow(1.0 + 1.0 / s0, 7.0);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    tail += 1200.0 * std::pow(s0, 7.0) * std::exp(-kPi * c * s0) /
            (1.0 - ratio);
    return tail;
}

namespace {

// Shared enumeration pattern of both sums: segments of the two parity
// classes are combined shell pair by shell pair in lexicographic (n1, n2)
// order, which fixes the reduction order of the accumulation.
template <typename PairTerm>
Cplx accumulate_pairs(const ClassList& c1, const ClassList& c2,
                      PairTerm&& term, long& terms) {
    Cplx total = 0.0;
    terms = 0;
    for (std::size_t n1 = 0; n1 + 1 < c1.seg.size(); ++n1)
        for (std::size_t n2 = 0; n2 + 1 < c2.seg.size(); ++n2) {
            Cplx block = 0.0;
            for (std::size_t i = c1.seg[n1]; i < c1.seg[n1 + 1]; ++i)
                for (std::size_t j = c2.seg[n2]; j < c2.seg[n2 + 1]; ++j) {
                    block += term(i, j);
                    ++terms;
                }
            total += block;
        }
    return total;
}

} // namespace

ThetaValue theta_siegel(std::uint16_t chi, const CMat& z,
                        const TruncationBound& b) {
    DOMAIN_CHECK(b.max_norm1 > 0 && b.max_norm2 > 0);
    DOMAIN_CHECK(is_siegel_point(z));
    const ClassList c1 = parity_class(std::uint8_t(chi & 255), b.max_norm1);
    const ClassList c2 = parity_class(std::uint8_t(chi >> 8), b.max_norm2);
    const Eigen::Matrix<Cplx, 8, 8> z11 = z.topLeftCorner(8, 8);
    const Eigen::Matrix<Cplx, 8, 8> z12 = z.topRightCorner(8, 8);
    const Eigen::Matrix<Cplx, 8, 8> z22 = z.bottomRightCorner(8, 8);
    auto coords = [](const IntegralOctave& h) {
        Eigen::Matrix<Cplx, 8, 1> v;
        for (int k = 0; k < 8; ++k) v(k) = double(h.f[std::size_t(k)]);
        return v;
    };
    std::vector<Eigen::Matrix<Cplx, 8, 1>> v2(c2.h.size());
    std::vector<Cplx> q2(c2.h.size());
    for (std::size_t j = 0; j < c2.h.size(); ++j) {
        v2[j] = coords(c2.h[j]);
        q2[j] = (v2[j].transpose() * z22 * v2[j])(0);
    }
    const Cplx half_pi_i(0.0, 0.5 * kPi);
    ThetaValue out;
    std::size_t last_i = std::size_t(-1);
    Cplx q1 = 0.0;
    Eigen::Matrix<Cplx, 1, 8> r1;
    out.value = accumulate_pairs(
        c1, c2,
        [&](std::size_t i, std::size_t j) -> Cplx {
            if (i != last_i) {
                const Eigen::Matrix<Cplx, 8, 1> v1 = coords(c1.h[i]);
                q1 = (v1.transpose() * z11 * v1)(0);
                r1 = v1.transpose() * z12;
                last_i = i;
            }
            const Cplx e = q1 + q2[j] + 2.0 * (r1 * v2[j])(0);
            return std::exp(half_pi_i * e);
        },
        out.terms);
    out.tail = theta_tail_bound(z, b);
    return out;
}

ThetaValue theta_restricted(std::uint16_t chi, const OrthPoint& z,
                            const TruncationBound& b) {
    DOMAIN_CHECK(b.max_norm1 > 0 && b.max_norm2 > 0);
    DOMAIN_CHECK(in_h10(z));
    const ClassList c1 = parity_class(std::uint8_t(chi & 255), b.max_norm1);
    const ClassList c2 = parity_class(std::uint8_t(chi >> 8), b.max_norm2);
    const Cplx pi_i(0.0, kPi);
    ThetaValue out;
    out.value = accumulate_pairs(
        c1, c2,
        [&](std::size_t i, std::size_t j) -> Cplx {
            const Cplx e = double(c1.n[i]) * z.z1 + double(c2.n[j]) * z.z2 +
                           ctriple_trace(c1.h[i], z.zf, c2.h[j]);
            return std::exp(pi_i * e);
        },
        out.terms);
    out.tail = theta_tail_bound(j_point(z), b);
    return out;
}

GeneratorImages generator_images(const GeneratorSpec& g) {
    const CPlusMatrix4 m = build_generator(g);
    const auto sp = is_spin(m);
    LOGIC_CHECK(sp.first && sp.second.has_value());
    GeneratorImages out;
    out.spec = g;
    out.orth = *sp.second;
    out.big = embed_j(m);
    return out;
}

double equivariance_residual(const GeneratorImages& g, const OrthPoint& z,
                             Chart c) {
    const CMat left = siegel_action(g.big, j_point(z));
    const OrthPoint moved = orth_action(g.orth, chart_apply(c, z)).first;
    const CMat right = j_point(chart_apply(c, moved));
    return max_abs(left - right);
}

double equivariance_residual(const GeneratorSpec& g, const OrthPoint& z,
                             Chart c) {
    return equivariance_residual(generator_images(g), z, c);
}

std::vector<GeneratorSpec> generator_battery() {
    std::vector<GeneratorSpec> out;
    GeneratorSpec inv;
    inv.kind = GeneratorSpec::Kind::inversion;
    out.push_back(inv);
    GeneratorSpec tu;
    tu.kind = GeneratorSpec::Kind::translation_upper;
    tu.s1 = 1;
    out.push_back(tu);
    tu.s1 = 0;
    tu.s2 = 1;
    out.push_back(tu);
    tu.s2 = 0;
    for (int i = 0; i < 8; ++i) {
        tu.h = IntegralOctave::basis(i);
        out.push_back(tu);
    }
    GeneratorSpec tl;
    tl.kind = GeneratorSpec::Kind::translation_lower;
    for (int i = 0; i < 8; ++i) {
        tl.h = IntegralOctave::basis(i);
        out.push_back(tl);
    }
    return out;
}

OrthPoint sample_point(std::mt19937_64& rng) {
    OrthPoint z;
    z.z1 = Cplx(-1.0 + 2.0 * unit_real(rng), 0.5 + 1.5 * unit_real(rng));
    z.z2 = Cplx(-1.0 + 2.0 * unit_real(rng), 0.5 + 1.5 * unit_real(rng));
    for (int k = 0; k < 8; ++k)
        z.zf.e[std::size_t(k)] =
            Cplx(-0.5 + unit_real(rng), -0.5 + unit_real(rng));
    const double target = z.z1.imag() * z.z2.imag() - 0.25;
    const double frac = 0.9 * unit_real(rng);
    const double n = imag_norm(z.zf);
    const double scale =
        (n > 0.0 && target > 0.0) ? std::sqrt(frac * target / n) : 0.0;
    for (int k = 0; k < 8; ++k)
        z.zf.e[std::size_t(k)] =
            Cplx(z.zf.e[std::size_t(k)].real(),
                 scale * z.zf.e[std::size_t(k)].imag());
    LOGIC_CHECK(in_h10(z));
    return z;
}

Chart discover_calibration(std::uint64_t seed, double tol) {
    DOMAIN_CHECK(tol > 0.0);
    std::mt19937_64 rng(seed);
    std::vector<GeneratorImages> gens;
    for (const GeneratorSpec& g : generator_battery())
        gens.push_back(generator_images(g));
    std::vector<OrthPoint> pts;
    for (int k = 0; k < 8; ++k) pts.push_back(sample_point(rng));
    int qualified = 0;
    Chart winner = Chart::identity;
    for (Chart c : {Chart::identity, Chart::minus_conj}) {
        double worst = 0.0;
        for (const GeneratorImages& g : gens)
            for (const OrthPoint& z : pts)
                worst = std::max(worst, equivariance_residual(g, z, c));
        if (worst < tol) {
            ++qualified;
            winner = c;
        }
    }
    DOMAIN_CHECK(qualified == 1);
    return winner;
}

} // namespace octt
