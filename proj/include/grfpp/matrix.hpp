#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "grfpp/errors.hpp"

namespace grfpp {

// Row-major dense matrix.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : data) s += v * v;
        return std::sqrt(s);
    }
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& a);
std::vector<double> matvec(const DenseMatrix& a, std::span<const double> v);
std::vector<double> transpose_matvec(const DenseMatrix& a, std::span<const double> v);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

// Sparse row-major matrix: each row is a col-sorted list of (col, value).
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, double>>> row;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), row(r) {}

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row[i].emplace_back(i, 1.0);
        return m;
    }

    std::size_t nnz() const {
        std::size_t s = 0;
        for (const auto& r : row) s += r.size();
        return s;
    }

    double fill_ratio() const {
        if (rows == 0 || cols == 0) return 0.0;
        return static_cast<double>(nnz()) / (static_cast<double>(rows) * cols);
    }

    DenseMatrix to_dense() const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix transpose(const SparseMatrix& a);
std::vector<double> matvec(const SparseMatrix& a, std::span<const double> v);
std::vector<double> transpose_matvec(const SparseMatrix& a, std::span<const double> v);

}  // namespace grfpp
