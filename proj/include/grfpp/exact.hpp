#pragma once

#include <functional>

#include "grfpp/graph.hpp"
#include "grfpp/matrix.hpp"
#include "grfpp/series.hpp"
#include "grfpp/walks.hpp"

namespace grfpp {

inline constexpr int kDefaultDenseLimit = 5000;

struct ExactKernel {
    DenseMatrix matrix;
    CoefficientSeries series;
    double tail_bound = 0.0;  // Frobenius-style bound on the truncation remainder

    bool converged() const { return tail_bound < 1e-12; }
};

// Brute-force truncated sum alpha_k W^k; the validation oracle for every
// estimator in the suite.
ExactKernel exact_kernel(const Graph& g, const CoefficientSeries& alpha,
                         int dense_limit = kDefaultDenseLimit);

using PairMask = std::function<bool(int, int)>;

PairMask mask_all();
// Keeps pairs at hop distance >= min_hops (distances from shortest_path_distances).
PairMask mask_min_hops(const DenseMatrix& distances, double min_hops);

// Relative Frobenius error over masked entries.
double masked_error(const DenseMatrix& exact, const DenseMatrix& estimate,
                    const PairMask& mask);

struct MseReport {
    double empirical_mse = 0.0;
    double empirical_se = 0.0;
    // Only populated for degree 2: |E-hat[X1^T X1]|_F^2 - |K|_F^2 with a
    // batch-based standard error.
    bool has_prediction = false;
    double predicted_mse = 0.0;
    double predicted_se = 0.0;
};

MseReport empirical_mse(const Graph& g, const CoefficientSeries& alpha, int degree,
                        const WalkConfig& cfg, int trials, bool reuse_walks = false);

}  // namespace grfpp
