#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "grfpp/graph.hpp"
#include "grfpp/matrix.hpp"
#include "grfpp/series.hpp"
#include "grfpp/termination.hpp"

namespace grfpp {

struct WalkConfig {
    int num_walks = 1;
    ModulationFunction modulation;
    TerminationStrategy termination = TerminationStrategy::bernoulli(0.5);
    std::uint64_t seed = 0;
    int max_length_cap = 0;  // 0 => 10x mean walk length
    int num_threads = 1;

    int effective_cap() const;
};

struct WalkDiagnostics {
    std::uint64_t truncated_walks = 0;
    std::uint64_t dead_end_walks = 0;
    std::uint64_t total_deposits = 0;  // before per-row deduplication
};

// Sparse N x N matrix whose row i is the feature vector phi_f(i), averaged
// over num_walks walks. Immutable after construction.
struct FeatureMatrix {
    SparseMatrix mat;
    int num_walks = 0;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    WalkDiagnostics diag;
};

using FeatureMatrixPtr = std::shared_ptr<const FeatureMatrix>;

// Algorithm-2 sampler: walk lengths pre-sampled from cfg.termination, deposits
// divided by the survival function. slot separates the seed streams of the 2l
// factor builds.
FeatureMatrix build_features(const Graph& g, const WalkConfig& cfg, std::uint64_t slot = 0);

// Legacy Algorithm-1 loop with inline Bernoulli termination draws; used as the
// distributional reference for the Algorithm-2 bernoulli path.
FeatureMatrix build_features_alg1(const Graph& g, const ModulationFunction& f, double p_halt,
                                  int num_walks, std::uint64_t seed, std::uint64_t slot = 0);

struct FeaturePair {
    FeatureMatrixPtr k1;
    FeatureMatrixPtr k2;
};

// 2l factor builds with distinct derived seeds; with reuse_walks one build is
// shared (reference-equal) across all slots.
std::vector<FeaturePair> build_feature_pairs(const Graph& g, const WalkConfig& cfg, int degree,
                                             bool reuse_walks = false);

void save_features(const FeatureMatrix& fm, const std::string& path);
FeatureMatrix load_features(const std::string& path);

}  // namespace grfpp
