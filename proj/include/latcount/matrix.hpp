#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "latcount/int_types.hpp"

namespace latcount {

// Dense row-major matrix.  Int entries everywhere except the handful of
// places that carry a rational right-hand side through elimination.
template <typename T>
class MatrixT {
public:
    MatrixT() : rows_(0), cols_(0) {}
    MatrixT(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static MatrixT identity(std::size_t n) {
        MatrixT m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const MatrixT& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::vector<T> row(std::size_t i) const {
        std::vector<T> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    MatrixT transposed() const {
        MatrixT t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using Matrix = MatrixT<Int>;
using RatMatrix = MatrixT<Rat>;

template <typename T>
MatrixT<T> mat_mul(const MatrixT<T>& a, const MatrixT<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
    MatrixT<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <typename T, typename V>
std::vector<V> mat_vec(const MatrixT<T>& a, const std::vector<V>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    std::vector<V> y(a.rows(), V(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += V(a(i, j)) * x[j];
    return y;
}

template <typename T, typename V>
V dot(const std::vector<T>& a, const std::vector<V>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    V s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += V(a[i]) * b[i];
    return s;
}

}  // namespace latcount
