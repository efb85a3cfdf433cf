#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "superflow/errors.hpp"
#include "superflow/mpoly.hpp"

namespace superflow {

// Dense row-major matrix.
template <class T>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows = static_cast<int>(init.size());
        cols = rows ? static_cast<int>(init.begin()->size()) : 0;
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols) throw DomainError("ragged matrix literal");
            a.insert(a.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    bool operator==(const Matrix&) const = default;

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw DomainError("matrix dimension mismatch");
        Matrix r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const T& v = x(i, k);
                if (v == T(0)) continue;
                for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
};

using RatMatrix = Matrix<Rat>;
using RealMatrix = Matrix<double>;

RealMatrix to_real(const RatMatrix& m);

// Exact Gauss-Jordan; throws DomainError on singular input.
RatMatrix inverse(const RatMatrix& m);
RealMatrix inverse(const RealMatrix& m);
Rat determinant(const RatMatrix& m);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& m);
int rank(RatMatrix m);
// Basis of {v : m v = 0}, one vector per free column.
std::vector<std::vector<Rat>> nullspace(RatMatrix m);

// Fraction-free determinant over a polynomial ring.
MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m);

// Signed permutation: row i has a single nonzero entry ±1.
struct SignedPerm {
    std::vector<int> target;  // x_i maps to sign[i] * x_{target[i]}
    std::vector<int> sign;
};
bool as_signed_perm(const RatMatrix& m, SignedPerm& out);

}  // namespace superflow
