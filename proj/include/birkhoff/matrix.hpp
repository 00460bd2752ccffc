#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/rational.hpp"

namespace birkhoff {

// Dense row-major matrix. Only the handful of exact operations the engine
// needs live here; sizes stay small (collocation matrices).
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<BigInt>;

// Clears denominators column by column (each column scaled by the lcm of its
// denominators). det(input) = det(result) / scale.
inline IntMatrix clear_denominators(const RatMatrix& m, BigInt& scale) {
    scale = 1;
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        BigInt l = 1;
        for (std::size_t i = 0; i < m.rows(); ++i)
            l = boost::multiprecision::lcm(l, denominator(m(i, j)));
        for (std::size_t i = 0; i < m.rows(); ++i)
            out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
        scale *= l;
    }
    return out;
}

// Fraction-free Bareiss elimination; every division below is exact. Returns
// the determinant of an integer matrix, bailing out early when a pivot column
// is entirely zero.
inline BigInt determinant_bareiss(IntMatrix a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw InputError("determinant of a non-square matrix");
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

inline Rational determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
    BigInt scale;
    const IntMatrix cleared = clear_denominators(m, scale);
    return Rational(determinant_bareiss(cleared), scale);
}

// Exact rank by rational Gaussian elimination.
inline std::size_t rank(RatMatrix m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        m.swap_rows(r, pivot);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0) continue;
            const Rational f = m(i, col) / m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

// Solves the square system m * x = rhs exactly. Throws SingularSystemError
// when the matrix is singular.
inline std::vector<Rational> solve_square(RatMatrix m, std::vector<Rational> rhs) {
    const std::size_t n = m.rows();
    if (m.cols() != n || rhs.size() != n) throw InputError("solve_square expects a square system");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularSystemError("collocation matrix is singular");
        m.swap_rows(col, pivot);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            const Rational f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
            rhs[i] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
        x[i] = acc / m(i, i);
    }
    return x;
}

}  // namespace birkhoff
