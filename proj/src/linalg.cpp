#include "octt/linalg.hpp"

#include <algorithm>

namespace octt {

Rat det(const RatMat& m) {
    DOMAIN_CHECK(m.rows() == m.cols());
    const std::size_t n = m.rows();
    RatMat a = m;
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
            d = -d;
        }
        d *= a(c, c);
        Rat inv = 1 / a(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a(r, c) == 0) continue;
            Rat fac = a(r, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(r, j) -= fac * a(c, j);
        }
    }
    return d;
}

RatMat inverse(const RatMat& m) {
    DOMAIN_CHECK(m.rows() == m.cols());
    const std::size_t n = m.rows();
    RatMat a = m;
    RatMat inv = RatMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        DOMAIN_CHECK(piv < n); // singular input is a caller error
        if (piv != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        Rat s = 1 / a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) *= s;
            inv(c, j) *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rat fac = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= fac * a(c, j);
                inv(r, j) -= fac * inv(c, j);
            }
        }
    }
    return inv;
}

std::vector<Rat> solve(const RatMat& m, const std::vector<Rat>& b) {
    DOMAIN_CHECK(m.rows() == m.cols() && b.size() == m.rows());
    RatMat inv = inverse(m);
    std::vector<Rat> x(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) x[i] += inv(i, j) * b[j];
    return x;
}

bool is_positive_definite(const RatMat& m) {
    DOMAIN_CHECK(m.rows() == m.cols());
    if (m != m.transpose()) return false;
    const std::size_t n = m.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        RatMat lead(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead(i, j) = m(i, j);
        if (det(lead) <= 0) return false;
    }
    return true;
}

namespace {

int cmpabs(const Int& a, const Int& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

// Quotient rounded to the nearest integer, so |a - q*b| <= |b| / 2.
Int nearest_quotient(const Int& a, const Int& b) {
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int rem2 = rem * 2;
    if (cmpabs(rem2, b) > 0) ++q; // rem has the sign of b, so round up by one
    return q;
}

} // namespace

IntMat hnf_rows(const IntMat& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    // Work list of row vectors; standard HNF by column sweeps with extended
    // gcd row combinations.  Sizes here are at most 128x128, so no care for
    // asymptotics is needed -- only exactness.
    std::vector<std::vector<Int>> w(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) w[i][j] = m(i, j);

    std::size_t r = 0; // next pivot row slot
    for (std::size_t c = 0; c < cols && r < w.size(); ++c) {
        // Clear column c below slot r.  Always pivot on the smallest nonzero
        // entry and reduce with nearest-integer quotients; this keeps the
        // multipliers small and avoids the coefficient explosion the naive
        // first-nonzero sweep suffers on dense 128x128 inputs.
        for (;;) {
            std::size_t piv = w.size();
            for (std::size_t i = r; i < w.size(); ++i)
                if (w[i][c] != 0 &&
                    (piv == w.size() ||
                     cmpabs(w[i][c], w[piv][c]) < 0))
                    piv = i;
            if (piv == w.size()) break; // column already clear
            std::swap(w[r], w[piv]);
            bool cleared = true;
            for (std::size_t i = r + 1; i < w.size(); ++i) {
                if (w[i][c] == 0) continue;
                Int q = nearest_quotient(w[i][c], w[r][c]);
                for (std::size_t j = c; j < cols; ++j) w[i][j] -= q * w[r][j];
                if (w[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (w[r][c] == 0) continue;
        if (w[r][c] < 0)
            for (std::size_t j = 0; j < cols; ++j) w[r][j] = -w[r][j];
        // Reduce the entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), w[i][c].get_mpz_t(), w[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j) w[i][j] -= q * w[r][j];
        }
        ++r;
    }
    IntMat h(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) h(i, j) = w[i][j];
    return h;
}

bool in_row_lattice(const std::vector<Int>& v, const IntMat& hnf) {
    DOMAIN_CHECK(v.size() == hnf.cols());
    std::vector<Int> w = v;
    std::size_t row = 0;
    for (std::size_t c = 0; c < hnf.cols(); ++c) {
        bool pivot_here = row < hnf.rows() && hnf(row, c) != 0;
        // Columns before the next pivot must already be reduced to zero.
        if (!pivot_here) {
            if (w[c] != 0) return false;
            continue;
        }
        // The integral coefficient of this basis row is forced: it must be
        // exactly w[c] / pivot.
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[c].get_mpz_t(),
                    hnf(row, c).get_mpz_t());
        if (rem != 0) return false;
        if (q != 0)
            for (std::size_t j = c; j < hnf.cols(); ++j) w[j] -= q * hnf(row, j);
        ++row;
    }
    for (const Int& x : w)
        if (x != 0) return false;
    return true;
}

} // namespace octt
