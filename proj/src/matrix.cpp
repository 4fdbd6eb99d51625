#include "grfpp/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace grfpp {

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw ContractError("dense multiply: dimension mismatch");
    DenseMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> v) {
    if (static_cast<int>(v.size()) != a.cols) throw ContractError("dense matvec: dimension mismatch");
    std::vector<double> out(a.rows, 0.0);
    for (int i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols; ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> transpose_matvec(const DenseMatrix& a, std::span<const double> v) {
    if (static_cast<int>(v.size()) != a.rows) throw ContractError("dense matvec^T: dimension mismatch");
    std::vector<double> out(a.cols, 0.0);
    for (int i = 0; i < a.rows; ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (int j = 0; j < a.cols; ++j) out[j] += a(i, j) * vi;
    }
    return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw ContractError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : row[i]) d(i, j) += v;
    return d;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw ContractError("sparse multiply: dimension mismatch");
    SparseMatrix c(a.rows, b.cols);
    std::vector<double> acc(b.cols, 0.0);
    std::vector<int> touched;
    for (int i = 0; i < a.rows; ++i) {
        touched.clear();
        for (const auto& [k, av] : a.row[i]) {
            for (const auto& [j, bv] : b.row[k]) {
                if (acc[j] == 0.0) touched.push_back(j);
                acc[j] += av * bv;
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& out = c.row[i];
        out.reserve(touched.size());
        for (int j : touched) {
            if (acc[j] != 0.0) out.emplace_back(j, acc[j]);
            acc[j] = 0.0;
        }
    }
    return c;
}

SparseMatrix transpose(const SparseMatrix& a) {
    SparseMatrix t(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.row[i]) t.row[j].emplace_back(i, v);
    return t;
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> v) {
    if (static_cast<int>(v.size()) != a.cols) throw ContractError("sparse matvec: dimension mismatch");
    std::vector<double> out(a.rows, 0.0);
    for (int i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (const auto& [j, w] : a.row[i]) s += w * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> transpose_matvec(const SparseMatrix& a, std::span<const double> v) {
    if (static_cast<int>(v.size()) != a.rows) throw ContractError("sparse matvec^T: dimension mismatch");
    std::vector<double> out(a.cols, 0.0);
    for (int i = 0; i < a.rows; ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (const auto& [j, w] : a.row[i]) out[j] += w * vi;
    }
    return out;
}

}  // namespace grfpp
