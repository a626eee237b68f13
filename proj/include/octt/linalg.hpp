#ifndef OCTT_LINALG_HPP
#define OCTT_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "octt/check.hpp"
#include "octt/rational.hpp"

namespace octt {

// Dense matrix over an exact scalar type (Rat or Int). Sizes in this project
// are small (8x8 up to 128x128), so a simple flat-storage implementation with
// schoolbook products is entirely adequate; all heavy lifting elsewhere is
// table-driven or modular.
template <typename T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) {
        DOMAIN_CHECK(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        DOMAIN_CHECK(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        DOMAIN_CHECK(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    Mat operator-(const Mat& o) const {
        DOMAIN_CHECK(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    Mat operator-() const {
        Mat r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }
    Mat operator*(const Mat& o) const {
        DOMAIN_CHECK(cols_ == o.rows_);
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& x = a_[i * cols_ + k];
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.a_[i * o.cols_ + j] += x * o.a_[k * o.cols_ + j];
            }
        return r;
    }
    Mat operator*(const T& s) const {
        Mat r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const T& x : a_) if (x != 0) return false;
        return true;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using RatMat = Mat<Rat>;
using IntMat = Mat<Int>;

template <typename T>
std::ostream& operator<<(std::ostream& os, const Mat<T>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << m(i, j) << (j + 1 == m.cols() ? "" : " ");
        os << (i + 1 == m.rows() ? "]" : "\n");
    }
    return os;
}

// Determinant by exact Gaussian elimination with column pivoting.
Rat det(const RatMat& m);

// Inverse by exact Gauss-Jordan; errors on singular input.
RatMat inverse(const RatMat& m);

// Solve m*x = b exactly (m square nonsingular).
std::vector<Rat> solve(const RatMat& m, const std::vector<Rat>& b);

// Positive definiteness of a symmetric rational matrix, decided exactly by the
// leading-principal-minor criterion.
bool is_positive_definite(const RatMat& m);

// Row-style Hermite normal form over Z: returns a basis (as matrix rows, pivot
// columns strictly increasing) of the Z-row-span of the input. Used for exact
// lattice-membership tests.
IntMat hnf_rows(const IntMat& m);

// Membership of v in the Z-row-span represented by an hnf_rows result.
bool in_row_lattice(const std::vector<Int>& v, const IntMat& hnf);

} // namespace octt

#endif
