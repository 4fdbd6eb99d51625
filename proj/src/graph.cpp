#include "grfpp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "grfpp/rng.hpp"

namespace grfpp {

NormalizationMode parse_normalization(const std::string& name) {
    if (name == "none") return NormalizationMode::none;
    if (name == "row_max" || name == "row-max") return NormalizationMode::row_max;
    if (name == "sym_degree" || name == "sym-degree") return NormalizationMode::sym_degree;
    throw DomainError("unknown normalization mode: " + name);
}

std::string to_string(NormalizationMode mode) {
    switch (mode) {
        case NormalizationMode::none: return "none";
        case NormalizationMode::row_max: return "row_max";
        case NormalizationMode::sym_degree: return "sym_degree";
    }
    return "?";
}

double Graph::weighted_row_sum(int i) const {
    double s = 0.0;
    for (double w : neighbor_weights(i)) s += w;
    return s;
}

double Graph::max_weighted_row_sum() const {
    double m = 0.0;
    for (int i = 0; i < num_nodes; ++i) m = std::max(m, weighted_row_sum(i));
    return m;
}

DenseMatrix Graph::to_dense() const {
    DenseMatrix w(num_nodes, num_nodes);
    for (int i = 0; i < num_nodes; ++i) {
        auto cols = neighbors(i);
        auto vals = neighbor_weights(i);
        for (std::size_t k = 0; k < cols.size(); ++k) w(i, cols[k]) += vals[k];
    }
    return w;
}

SparseMatrix Graph::to_sparse() const {
    SparseMatrix m(num_nodes, num_nodes);
    for (int i = 0; i < num_nodes; ++i) {
        auto cols = neighbors(i);
        auto vals = neighbor_weights(i);
        for (std::size_t k = 0; k < cols.size(); ++k) m.row[i].emplace_back(cols[k], vals[k]);
    }
    return m;
}

Graph build_graph(int num_nodes, const EdgeList& edges, NormalizationMode normalization) {
    if (num_nodes <= 0) throw DomainError("graph must have a positive node count");

    std::map<std::pair<int, int>, double> entries;
    for (const auto& [u, v, w] : edges) {
        if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes)
            throw DomainError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                              std::to_string(v) + ") with N=" + std::to_string(num_nodes));
        if (w < 0.0) throw DomainError("negative edge weight on (" + std::to_string(u) + ", " +
                                       std::to_string(v) + ")");
        if (w == 0.0) continue;
        for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
            auto [it, inserted] = entries.emplace(std::pair{a, b}, w);
            if (!inserted && it->second != w)
                throw DomainError("conflicting duplicate edge (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ")");
            if (a == b) break;  // self-loop stored once
        }
    }

    Graph g;
    g.num_nodes = num_nodes;
    g.row_offsets.assign(num_nodes + 1, 0);
    g.col_indices.reserve(entries.size());
    g.weights.reserve(entries.size());
    for (const auto& [key, w] : entries) {
        g.row_offsets[key.first + 1]++;
        g.col_indices.push_back(key.second);
        g.weights.push_back(w);
    }
    for (int i = 0; i < num_nodes; ++i) g.row_offsets[i + 1] += g.row_offsets[i];
    g.degree.resize(num_nodes);
    for (int i = 0; i < num_nodes; ++i)
        g.degree[i] = static_cast<int>(g.row_offsets[i + 1] - g.row_offsets[i]);

    switch (normalization) {
        case NormalizationMode::none:
            break;
        case NormalizationMode::row_max: {
            const double m = g.max_weighted_row_sum();
            if (m > 0.0)
                for (double& w : g.weights) w /= m;
            break;
        }
        case NormalizationMode::sym_degree: {
            std::vector<double> wdeg(num_nodes);
            for (int i = 0; i < num_nodes; ++i) wdeg[i] = g.weighted_row_sum(i);
            for (int i = 0; i < num_nodes; ++i) {
                for (std::size_t k = g.row_offsets[i]; k < g.row_offsets[i + 1]; ++k) {
                    const int j = g.col_indices[k];
                    g.weights[k] /= std::sqrt(wdeg[i] * wdeg[j]);
                }
            }
            break;
        }
    }
    return g;
}

Graph load_edge_list(const std::string& path, NormalizationMode normalization) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list: " + path);

    auto strip = [](std::string s) {
        if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
        return s;
    };

    std::string line;
    int line_no = 0;
    int num_nodes = -1;
    EdgeList edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip(line));
        if (num_nodes < 0) {
            if (!(ls >> num_nodes)) continue;  // blank/comment before header
            std::string rest;
            if (ls >> rest)
                throw ParseError(path + ":" + std::to_string(line_no) + ": malformed header line");
            continue;
        }
        int u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v))
            throw ParseError(path + ":" + std::to_string(line_no) + ": malformed edge line");
        double w = 1.0;
        ls >> w;
        std::string rest;
        if (ls >> rest)
            throw ParseError(path + ":" + std::to_string(line_no) + ": trailing tokens");
        edges.emplace_back(u, v, w);
    }
    if (num_nodes < 0) throw ParseError(path + ": missing node-count header");
    try {
        return build_graph(num_nodes, edges, normalization);
    } catch (const DomainError& e) {
        throw DomainError(path + ": " + e.what());
    }
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << g.num_nodes << "\n";
    char buf[64];
    for (int i = 0; i < g.num_nodes; ++i) {
        auto cols = g.neighbors(i);
        auto vals = g.neighbor_weights(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] < i) continue;  // emit each undirected edge once
            std::snprintf(buf, sizeof buf, "%.17g", vals[k]);
            out << i << " " << cols[k] << " " << buf << "\n";
        }
    }
}

bool is_symmetric(const Graph& g) {
    for (int i = 0; i < g.num_nodes; ++i) {
        auto cols = g.neighbors(i);
        auto vals = g.neighbor_weights(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const int j = cols[k];
            auto jc = g.neighbors(j);
            auto it = std::lower_bound(jc.begin(), jc.end(), i);
            if (it == jc.end() || *it != i) return false;
            if (g.neighbor_weights(j)[it - jc.begin()] != vals[k]) return false;
        }
    }
    return true;
}

bool is_connected(const Graph& g) {
    if (g.num_nodes == 0) return false;
    std::vector<char> seen(g.num_nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == g.num_nodes;
}

namespace {

Graph retry_connected(const char* what, std::uint64_t seed, int max_retries,
                      auto&& draw) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Graph g = draw(seed + static_cast<std::uint64_t>(attempt));
        if (is_connected(g)) return g;
    }
    throw GenerationError(std::string(what) + ": no connected draw after " +
                          std::to_string(max_retries) + " attempts");
}

}  // namespace

Graph generate_erdos_renyi(int num_nodes, double p, std::uint64_t seed,
                           NormalizationMode normalization) {
    if (num_nodes < 1) throw DomainError("erdos_renyi: N must be positive");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("erdos_renyi: p must be in (0, 1]");
    return retry_connected("erdos_renyi", seed, 64, [&](std::uint64_t s) {
        SplitMix64 rng(mix_seed(s, 0x6572ULL));
        EdgeList edges;
        for (int i = 0; i < num_nodes; ++i)
            for (int j = i + 1; j < num_nodes; ++j)
                if (rng.uniform() < p) edges.emplace_back(i, j, 1.0);
        return build_graph(num_nodes, edges, normalization);
    });
}

Graph generate_binary_tree(int depth, NormalizationMode normalization) {
    if (depth < 0) throw DomainError("binary_tree: depth must be nonnegative");
    const int n = (1 << (depth + 1)) - 1;
    EdgeList edges;
    for (int i = 0; 2 * i + 1 < n; ++i) {
        edges.emplace_back(i, 2 * i + 1, 1.0);
        if (2 * i + 2 < n) edges.emplace_back(i, 2 * i + 2, 1.0);
    }
    return build_graph(n, edges, normalization);
}

Graph generate_d_regular(int num_nodes, int d, std::uint64_t seed,
                         NormalizationMode normalization) {
    if (d < 1 || d >= num_nodes) throw DomainError("d_regular: need 1 <= d < N");
    if ((static_cast<long long>(num_nodes) * d) % 2 != 0)
        throw DomainError("d_regular: N*d must be even");
    return retry_connected("d_regular", seed, 1000, [&](std::uint64_t s) {
        SplitMix64 rng(mix_seed(s, 0x7265ULL));
        // Configuration model: shuffle stubs, pair consecutive, reject bad draws.
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(num_nodes) * d);
        for (int i = 0; i < num_nodes; ++i)
            for (int k = 0; k < d; ++k) stubs.push_back(i);
        for (std::size_t i = stubs.size() - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.below(i + 1)]);
        std::map<std::pair<int, int>, bool> used;
        EdgeList edges;
        for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
            int u = stubs[k], v = stubs[k + 1];
            if (u == v) return Graph{};  // rejected; caller retries
            if (u > v) std::swap(u, v);
            if (used.count({u, v})) return Graph{};
            used[{u, v}] = true;
            edges.emplace_back(u, v, 1.0);
        }
        return build_graph(num_nodes, edges, normalization);
    });
}

DenseMatrix shortest_path_distances(const Graph& g) {
    const int n = g.num_nodes;
    const double inf = std::numeric_limits<double>::infinity();
    DenseMatrix dist(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist(i, j) = (i == j) ? 0.0 : inf;
    for (int i = 0; i < n; ++i)
        for (int j : g.neighbors(i))
            if (i != j) dist(i, j) = 1.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const double dik = dist(i, k);
            if (dik == inf) continue;
            for (int j = 0; j < n; ++j)
                if (dik + dist(k, j) < dist(i, j)) dist(i, j) = dik + dist(k, j);
        }
    return dist;
}

}  // namespace grfpp
