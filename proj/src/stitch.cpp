#include "grfpp/stitch.hpp"

#include <cmath>
#include <random>

namespace grfpp {

StitchMatrix::StitchMatrix(SparseMatrix m) : sp_(std::move(m)) { maybe_densify(); }
StitchMatrix::StitchMatrix(DenseMatrix m) : dense_(true), dn_(std::move(m)) {}

int StitchMatrix::rows() const { return dense_ ? dn_.rows : sp_.rows; }
int StitchMatrix::cols() const { return dense_ ? dn_.cols : sp_.cols; }

DenseMatrix StitchMatrix::to_dense() const { return dense_ ? dn_ : sp_.to_dense(); }

std::vector<double> StitchMatrix::apply(std::span<const double> v) const {
    return dense_ ? matvec(dn_, v) : matvec(sp_, v);
}

void StitchMatrix::maybe_densify() {
    if (!dense_ && sp_.fill_ratio() > kDensifyThreshold) {
        dn_ = sp_.to_dense();
        sp_ = SparseMatrix{};
        dense_ = true;
    }
}

void StitchMatrix::right_multiply(const StitchMatrix& other) {
    if (cols() != other.rows()) throw ContractError("stitch product: dimension mismatch");
    if (!dense_ && !other.dense_) {
        sp_ = multiply(sp_, other.sp_);
        maybe_densify();
        return;
    }
    if (!dense_ && other.dense_) {
        // sparse * dense
        DenseMatrix out(sp_.rows, other.dn_.cols);
        for (int i = 0; i < sp_.rows; ++i)
            for (const auto& [k, v] : sp_.row[i])
                for (int j = 0; j < other.dn_.cols; ++j) out(i, j) += v * other.dn_(k, j);
        dn_ = std::move(out);
        sp_ = SparseMatrix{};
        dense_ = true;
        return;
    }
    if (dense_ && !other.dense_) {
        // dense * sparse
        DenseMatrix out(dn_.rows, other.sp_.cols);
        for (int i = 0; i < dn_.rows; ++i)
            for (int k = 0; k < dn_.cols; ++k) {
                const double a = dn_(i, k);
                if (a == 0.0) continue;
                for (const auto& [j, v] : other.sp_.row[k]) out(i, j) += a * v;
            }
        dn_ = std::move(out);
        return;
    }
    dn_ = multiply(dn_, other.dn_);
}

int StitchedEstimator::num_nodes() const {
    return pairs.empty() ? 0 : pairs.front().k1->mat.rows;
}

DenseMatrix project_jlt(const FeatureMatrix& mat, int r, std::uint64_t seed) {
    if (r < 1) throw DomainError("project_jlt: r must be >= 1");
    const int n = mat.mat.cols;
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DenseMatrix g(n, r);
    for (double& v : g.data) v = gauss(gen);
    const double scale = 1.0 / std::sqrt(static_cast<double>(r));
    DenseMatrix out(mat.mat.rows, r);
    for (int i = 0; i < mat.mat.rows; ++i)
        for (const auto& [k, v] : mat.mat.row[i])
            for (int j = 0; j < r; ++j) out(i, j) += v * g(k, j);
    for (double& v : out.data) v *= scale;
    return out;
}

StitchedEstimator make_estimator(std::vector<FeaturePair> pairs, StitchMode mode, int jlt_dim,
                                 std::uint64_t jlt_seed) {
    if (pairs.empty()) throw DomainError("make_estimator: need at least one factor pair");
    StitchedEstimator est;
    est.pairs = std::move(pairs);
    est.mode = mode;
    est.jlt_dim = jlt_dim;
    est.jlt_seed = jlt_seed;
    if (mode == StitchMode::jlt) {
        if (jlt_dim < 1) throw DomainError("make_estimator: jlt mode needs r >= 1");
        est.projected.reserve(2 * est.pairs.size());
        for (std::size_t i = 0; i < est.pairs.size(); ++i) {
            // One Gaussian matrix per pair, shared by both members.
            const std::uint64_t pair_seed = mix_seed(jlt_seed, static_cast<std::uint64_t>(i));
            est.projected.push_back(project_jlt(*est.pairs[i].k1, jlt_dim, pair_seed));
            est.projected.push_back(project_jlt(*est.pairs[i].k2, jlt_dim, pair_seed));
        }
    }
    return est;
}

std::pair<StitchMatrix, StitchMatrix> assemble_xy(const std::vector<FeaturePair>& pairs) {
    if (pairs.empty()) throw DomainError("assemble_xy: need at least one pair");
    const int l = static_cast<int>(pairs.size());
    const int n = pairs.front().k1->mat.rows;

    auto pair_product = [&](int i, bool swapped) {
        // K1^(i) K2^(i)^T, or K2^(i) K1^(i)^T when swapped.
        const auto& a = swapped ? pairs[i].k2->mat : pairs[i].k1->mat;
        const auto& b = swapped ? pairs[i].k1->mat : pairs[i].k2->mat;
        return StitchMatrix(multiply(a, transpose(b)));
    };

    StitchMatrix x(SparseMatrix::identity(n));
    StitchMatrix y(SparseMatrix::identity(n));
    if (l % 2 == 0) {
        for (int i = 0; i < l / 2; ++i) x.right_multiply(pair_product(i, false));
        for (int i = l - 1; i >= l / 2; --i) y.right_multiply(pair_product(i, true));
    } else {
        const int mid = (l - 1) / 2;  // middle pair, split between X and Y
        for (int i = 0; i < mid; ++i) x.right_multiply(pair_product(i, false));
        x.right_multiply(StitchMatrix(pairs[mid].k1->mat));
        for (int i = l - 1; i > mid; --i) y.right_multiply(pair_product(i, true));
        y.right_multiply(StitchMatrix(pairs[mid].k2->mat));
    }
    return {std::move(x), std::move(y)};
}

std::vector<double> apply(const StitchedEstimator& est, std::span<const double> v) {
    if (static_cast<int>(v.size()) != est.num_nodes())
        throw ContractError("apply: vector length must equal node count");
    std::vector<double> cur(v.begin(), v.end());
    const int l = est.degree();
    for (int i = l - 1; i >= 0; --i) {
        if (est.mode == StitchMode::jlt) {
            cur = transpose_matvec(est.projected[2 * i + 1], cur);
            cur = matvec(est.projected[2 * i], cur);
        } else {
            cur = transpose_matvec(est.pairs[i].k2->mat, cur);
            cur = matvec(est.pairs[i].k1->mat, cur);
        }
    }
    return cur;
}

DenseMatrix materialize(const StitchedEstimator& est, int node_limit) {
    const int n = est.num_nodes();
    if (n > node_limit)
        throw ContractError("materialize: " + std::to_string(n) +
                            " nodes exceeds limit; use apply() instead");
    if (est.mode == StitchMode::jlt) {
        DenseMatrix acc = DenseMatrix::identity(n);
        for (int i = 0; i < est.degree(); ++i) {
            acc = multiply(acc, est.projected[2 * i]);
            acc = multiply(acc, transpose(est.projected[2 * i + 1]));
        }
        return acc;
    }
    StitchMatrix acc(SparseMatrix::identity(n));
    for (int i = 0; i < est.degree(); ++i) {
        acc.right_multiply(StitchMatrix(est.pairs[i].k1->mat));
        acc.right_multiply(StitchMatrix(transpose(est.pairs[i].k2->mat)));
    }
    return acc.to_dense();
}

}  // namespace grfpp
