#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "grfpp/matrix.hpp"

namespace grfpp {

enum class NormalizationMode { none, row_max, sym_degree };

NormalizationMode parse_normalization(const std::string& name);
std::string to_string(NormalizationMode mode);

// Symmetric weighted graph in CSR form. Immutable after construction; safe to
// share across threads.
struct Graph {
    int num_nodes = 0;
    std::vector<std::size_t> row_offsets;  // size num_nodes + 1
    std::vector<int> col_indices;
    std::vector<double> weights;
    std::vector<int> degree;  // unweighted neighbour counts

    std::span<const int> neighbors(int i) const {
        return {col_indices.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
    }
    std::span<const double> neighbor_weights(int i) const {
        return {weights.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
    }

    double weighted_row_sum(int i) const;
    double max_weighted_row_sum() const;  // == ||W||_inf for nonnegative W
    std::size_t num_edges_stored() const { return col_indices.size(); }

    DenseMatrix to_dense() const;
    SparseMatrix to_sparse() const;
};

using EdgeList = std::vector<std::tuple<int, int, double>>;

// Core builder: validates ids/weights, symmetrizes, deduplicates, normalizes.
Graph build_graph(int num_nodes, const EdgeList& edges,
                  NormalizationMode normalization = NormalizationMode::none);

Graph load_edge_list(const std::string& path,
                     NormalizationMode normalization = NormalizationMode::row_max);
void save_edge_list(const Graph& g, const std::string& path);

Graph generate_erdos_renyi(int num_nodes, double p, std::uint64_t seed,
                           NormalizationMode normalization = NormalizationMode::row_max);
Graph generate_binary_tree(int depth,
                           NormalizationMode normalization = NormalizationMode::row_max);
Graph generate_d_regular(int num_nodes, int d, std::uint64_t seed,
                         NormalizationMode normalization = NormalizationMode::row_max);

bool is_connected(const Graph& g);
bool is_symmetric(const Graph& g);

// Unweighted hop distances (Floyd-Warshall); unreachable pairs are +inf.
DenseMatrix shortest_path_distances(const Graph& g);

}  // namespace grfpp
