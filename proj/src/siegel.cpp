#include "octt/siegel.hpp"

#include "octt/check.hpp"
#include "octt/octave.hpp"
#include "octt/representation.hpp"

namespace octt {

namespace {

struct QuadrantData {
    RatMat f, finv, ft, ftinv; // F, F^-1, F', F'^-1

    QuadrantData() {
        f = f_basis_matrix();
        finv = inverse(f);
        ft = f.transpose();
        ftinv = inverse(ft);
    }
};

const QuadrantData& quadrant_data() {
    static const QuadrantData d;
    return d;
}

void put_block(RatMat& dst, std::size_t r0, std::size_t c0, const RatMat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) dst(r0 + i, c0 + j) = b(i, j);
}

RatMat get_block(const RatMat& src, std::size_t r0, std::size_t c0,
                 std::size_t n) {
    RatMat b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = src(r0 + i, c0 + j);
    return b;
}

bool all_even(const RatMat& m, std::size_t modulus = 2) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rat& x = m(i, j);
            if (!is_integer(x)) return false;
            if (to_int(x) % long(modulus) != 0) return false;
        }
    return true;
}

bool even_diagonal(const RatMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const Rat& x = m(i, i);
        if (!is_integer(x) || to_int(x) % 2 != 0) return false;
    }
    return true;
}

} // namespace

RatMat hom32(const CPlusMatrix4& m) {
    RatMat h(32, 32);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            if (m.at(r, c).is_zero()) continue;
            put_block(h, std::size_t(8 * r), std::size_t(8 * c),
                      even_hom_to_m8(m.at(r, c)));
        }
    return h;
}

RatMat embed_j(const CPlusMatrix4& m) {
    DOMAIN_CHECK(is_spin(m).first);
    const QuadrantData& q = quadrant_data();
    const RatMat h = hom32(m);
    RatMat out(32, 32);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            RatMat blk = get_block(h, std::size_t(8 * r), std::size_t(8 * c), 8);
            if (blk.is_zero()) continue;
            if (r < 2 && c < 2) blk = q.f * blk * q.finv;
            else if (r < 2) blk = (q.f * blk * q.ft) * Rat(2);
            else if (c < 2) blk = (q.ftinv * blk * q.finv) * frac(1, 2);
            else blk = q.ftinv * blk * q.ft;
            put_block(out, std::size_t(8 * r), std::size_t(8 * c), blk);
        }
    return out;
}

const RatMat& symplectic_form_32() {
    static const RatMat j = [] {
        RatMat m(32, 32);
        for (std::size_t i = 0; i < 16; ++i) {
            m(i, 16 + i) = 1;
            m(16 + i, i) = -1;
        }
        return m;
    }();
    return j;
}

bool is_integral_matrix(const RatMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_integer(m(i, j))) return false;
    return true;
}

bool is_symplectic_32(const RatMat& m) {
    DOMAIN_CHECK(m.rows() == 32 && m.cols() == 32);
    const RatMat& j = symplectic_form_32();
    return m.transpose() * j * m == j;
}

LevelReport classify_level(const RatMat& m) {
    DOMAIN_CHECK(m.rows() == 32 && m.cols() == 32);
    LevelReport rep;
    if (!is_integral_matrix(m) || !is_symplectic_32(m)) return rep;
    rep.integral_symplectic = true;

    const RatMat delta = m - RatMat::identity(32);
    rep.principal_level = all_even(delta, 4) ? 4 : all_even(delta, 2) ? 2 : 1;

    const RatMat a = get_block(m, 0, 0, 16);
    const RatMat b = get_block(m, 0, 16, 16);
    const RatMat c = get_block(m, 16, 0, 16);
    const RatMat d = get_block(m, 16, 16, 16);
    const RatMat ab = a * b.transpose();
    const RatMat cd = c * d.transpose();
    rep.igusa_12 = even_diagonal(ab) && even_diagonal(cd);
    rep.igusa_24 = rep.principal_level >= 2 &&
                   even_diagonal(ab * frac(1, 2)) &&
                   even_diagonal(cd * frac(1, 2));
    return rep;
}

RatMat scale_blocks_32(const RatMat& m) {
    DOMAIN_CHECK(m.rows() == 32 && m.cols() == 32);
    RatMat r = m;
    const Rat half = frac(1, 2);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 16; j < 32; ++j) {
            r(i, j) = r(i, j) * half;   // upper-right
            r(j, i) = r(j, i) * Rat(2); // lower-left
        }
    return r;
}

} // namespace octt
