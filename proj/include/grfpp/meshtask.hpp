#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "grfpp/graph.hpp"
#include "grfpp/matrix.hpp"
#include "grfpp/stitch.hpp"

namespace grfpp {

using Vec3 = std::array<double, 3>;

enum class EdgeWeightMode { unit, inv_length };

struct Mesh {
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;  // unit length
    std::vector<std::array<int, 3>> faces;

    int num_vertices() const { return static_cast<int>(positions.size()); }

    Graph to_graph(EdgeWeightMode mode = EdgeWeightMode::unit,
                   NormalizationMode normalization = NormalizationMode::sym_degree) const;
};

// OBJ loader (v/vn/f records, triangles only). Normals recomputed by
// area-weighted face averaging when vn records are absent.
Mesh load_mesh(const std::string& path);

// Kernel-times-vector oracle; both the exact matrix and the stitched
// estimator plug in here.
using KernelApplier = std::function<std::vector<double>(std::span<const double>)>;

KernelApplier applier_from_dense(const DenseMatrix& k);
KernelApplier applier_from_estimator(const StitchedEstimator& est);

struct NormalPredictionResult {
    double mean_cosine = 0.0;
    int masked_count = 0;
    int zero_prediction_count = 0;  // vertices with no kernel mass on the unmasked set
};

// Masks floor(fraction * N) vertices, predicts each masked normal as the
// kernel-weighted sum over unmasked normals, reports mean cosine similarity.
NormalPredictionResult predict_normals(const Mesh& mesh, double mask_fraction,
                                       const KernelApplier& kernel, std::uint64_t seed);

}  // namespace grfpp
