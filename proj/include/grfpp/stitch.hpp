#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grfpp/matrix.hpp"
#include "grfpp/walks.hpp"

namespace grfpp {

// Product accumulator that stays sparse until fill crosses a threshold, then
// continues densely. Stitched chains densify quickly.
class StitchMatrix {
  public:
    static constexpr double kDensifyThreshold = 0.25;

    explicit StitchMatrix(SparseMatrix m);
    explicit StitchMatrix(DenseMatrix m);

    int rows() const;
    int cols() const;
    bool is_dense() const { return dense_; }

    DenseMatrix to_dense() const;
    std::vector<double> apply(std::span<const double> v) const;

    // this = this * other (densifying as needed).
    void right_multiply(const StitchMatrix& other);

  private:
    bool dense_ = false;
    SparseMatrix sp_;
    DenseMatrix dn_;
    void maybe_densify();
};

enum class StitchMode { explicit_xy, jlt, op };

// The degree-l estimator K-hat = prod_i K1^(i) (K2^(i))^T, optionally with
// per-pair JLT down-projections sharing one Gaussian matrix within each pair.
struct StitchedEstimator {
    std::vector<FeaturePair> pairs;
    StitchMode mode = StitchMode::op;
    int jlt_dim = 0;
    std::uint64_t jlt_seed = 0;
    // Populated lazily in jlt mode: projected factors (N x r), two per pair.
    std::vector<DenseMatrix> projected;

    int degree() const { return static_cast<int>(pairs.size()); }
    int num_nodes() const;
};

StitchedEstimator make_estimator(std::vector<FeaturePair> pairs,
                                 StitchMode mode = StitchMode::op, int jlt_dim = 0,
                                 std::uint64_t jlt_seed = 0);

// (1/sqrt(r)) * mat * G with G an N x r seeded standard-Gaussian matrix.
DenseMatrix project_jlt(const FeatureMatrix& mat, int r, std::uint64_t seed);

// Option-I split K-hat = X * Y^T per the even/odd degree formulas.
std::pair<StitchMatrix, StitchMatrix> assemble_xy(const std::vector<FeaturePair>& pairs);

// Option III: chain-vector product, right to left; never materializes N x N.
std::vector<double> apply(const StitchedEstimator& est, std::span<const double> v);

inline constexpr int kDefaultMaterializeLimit = 5000;

// Full dense product of all 2l factors. Guarded by a node limit.
DenseMatrix materialize(const StitchedEstimator& est,
                        int node_limit = kDefaultMaterializeLimit);

}  // namespace grfpp
