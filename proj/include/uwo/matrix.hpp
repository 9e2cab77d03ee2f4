#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "uwo/rational.hpp"

namespace uwo {

// Small dense matrix, row major. T is Rational for exact work or double.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, T(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix out(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& v = (*this)(i, k);
                if (v == T(0)) continue;
                for (int j = 0; j < o.cols_; ++j) out(i, j) += v * o(k, j);
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix out = *this;
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
        return out;
    }

    Matrix operator*(const T& s) const {
        Matrix out = *this;
        for (auto& v : out.a_) v *= s;
        return out;
    }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!(v == T(0))) return false;
        return true;
    }

    // Row echelon reduction in place; returns rank. Exact for T = Rational.
    int row_reduce() {
        int rank = 0;
        for (int col = 0; col < cols_ && rank < rows_; ++col) {
            int piv = -1;
            for (int r = rank; r < rows_; ++r)
                if (!((*this)(r, col) == T(0))) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            swap_rows(piv, rank);
            T inv = T(1) / (*this)(rank, col);
            for (int j = col; j < cols_; ++j) (*this)(rank, j) *= inv;
            for (int r = 0; r < rows_; ++r) {
                if (r == rank) continue;
                T f = (*this)(r, col);
                if (f == T(0)) continue;
                for (int j = col; j < cols_; ++j) (*this)(r, j) -= f * (*this)(rank, j);
            }
            ++rank;
        }
        return rank;
    }

    int rank() const {
        Matrix tmp = *this;
        return tmp.row_reduce();
    }

    T det() const {
        assert(rows_ == cols_);
        Matrix tmp = *this;
        T d(1);
        for (int col = 0; col < cols_; ++col) {
            int piv = -1;
            for (int r = col; r < rows_; ++r)
                if (!(tmp(r, col) == T(0))) {
                    piv = r;
                    break;
                }
            if (piv < 0) return T(0);
            if (piv != col) {
                tmp.swap_rows(piv, col);
                d = -d;
            }
            d *= tmp(col, col);
            T inv = T(1) / tmp(col, col);
            for (int r = col + 1; r < rows_; ++r) {
                T f = tmp(r, col) * inv;
                if (f == T(0)) continue;
                for (int j = col; j < cols_; ++j) tmp(r, j) -= f * tmp(col, j);
            }
        }
        return d;
    }

    Matrix inverse() const {
        assert(rows_ == cols_);
        Matrix tmp = *this;
        Matrix inv = identity(rows_);
        for (int col = 0; col < cols_; ++col) {
            int piv = -1;
            for (int r = col; r < rows_; ++r)
                if (!(tmp(r, col) == T(0))) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw std::domain_error("matrix not invertible");
            tmp.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            T s = T(1) / tmp(col, col);
            for (int j = 0; j < cols_; ++j) {
                tmp(col, j) *= s;
                inv(col, j) *= s;
            }
            for (int r = 0; r < rows_; ++r) {
                if (r == col) continue;
                T f = tmp(r, col);
                if (f == T(0)) continue;
                for (int j = 0; j < cols_; ++j) {
                    tmp(r, j) -= f * tmp(col, j);
                    inv(r, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

    // Basis of the null space (columns x with Ax = 0).
    std::vector<std::vector<T>> kernel() const {
        Matrix tmp = *this;
        tmp.row_reduce();
        std::vector<int> pivot_col_of_row(rows_, -1);
        std::vector<bool> is_pivot(cols_, false);
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            if (!(tmp(r, c) == T(0))) {
                pivot_col_of_row[r] = c;
                is_pivot[c] = true;
                ++r;
            }
        }
        std::vector<std::vector<T>> basis;
        for (int free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<T> v(cols_, T(0));
            v[free] = T(1);
            for (int row = 0; row < rows_; ++row) {
                int pc = pivot_col_of_row[row];
                if (pc < 0) break;
                v[pc] = -tmp(row, free);
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using QMatrix = Matrix<Rational>;

inline Matrix<double> to_double(const QMatrix& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

}  // namespace uwo
