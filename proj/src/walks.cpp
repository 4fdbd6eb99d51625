#include "grfpp/walks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <thread>

#include <json.hpp>

namespace grfpp {

int WalkConfig::effective_cap() const {
    if (max_length_cap > 0) return max_length_cap;
    const double mean = termination.mean_length();
    return std::max(1, static_cast<int>(std::ceil(10.0 * mean)));
}

namespace {

std::uint64_t hash_config(int num_walks, std::uint64_t seed, const ModulationFunction& f,
                          const std::string& term_label) {
    std::uint64_t h = mix_seed(static_cast<std::uint64_t>(num_walks), seed);
    for (double v : f.values) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof v);
        std::memcpy(&bits, &v, sizeof bits);
        h = mix_seed(h, bits);
    }
    for (char c : term_label) h = mix_seed(h, static_cast<std::uint64_t>(c));
    return h;
}

// Shared worker scaffolding: walk_fn(i, w, rng, deposit) runs one walk from
// node i, depositing into the row accumulator via the callback.
template <typename WalkFn>
FeatureMatrix run_walks(const Graph& g, int num_walks, std::uint64_t seed, std::uint64_t slot,
                        int num_threads, WalkFn&& walk_fn) {
    const int n = g.num_nodes;
    FeatureMatrix fm;
    fm.mat = SparseMatrix(n, n);
    fm.num_walks = num_walks;
    fm.seed = seed;

    const double inv_m = 1.0 / num_walks;
    std::atomic<std::uint64_t> truncated{0}, dead_ends{0}, deposits{0};
    std::atomic<int> next_node{0};

    auto worker = [&] {
        std::vector<double> acc(n, 0.0);
        std::vector<int> touched;
        std::uint64_t local_trunc = 0, local_dead = 0, local_dep = 0;
        for (;;) {
            const int i = next_node.fetch_add(1);
            if (i >= n) break;
            touched.clear();
            auto deposit = [&](int node, double value) {
                ++local_dep;
                if (acc[node] == 0.0) touched.push_back(node);
                acc[node] += value;
            };
            const std::uint64_t node_seed = mix_seed(seed, slot, static_cast<std::uint64_t>(i));
            for (int w = 0; w < num_walks; ++w) {
                SplitMix64 rng(mix_seed(node_seed, static_cast<std::uint64_t>(w)));
                walk_fn(i, rng, deposit, local_trunc, local_dead);
            }
            auto& out = fm.mat.row[i];
            out.reserve(touched.size());
            if (static_cast<std::size_t>(n) <= 4 * touched.size()) {
                // Dense row: a linear scan is sorted for free.
                for (int j = 0; j < n; ++j) {
                    if (acc[j] != 0.0) out.emplace_back(j, acc[j] * inv_m);
                    acc[j] = 0.0;
                }
            } else {
                std::sort(touched.begin(), touched.end());
                for (int j : touched) {
                    if (acc[j] != 0.0) out.emplace_back(j, acc[j] * inv_m);
                    acc[j] = 0.0;
                }
            }
        }
        truncated += local_trunc;
        dead_ends += local_dead;
        deposits += local_dep;
    };

    const int threads = std::max(1, num_threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    fm.diag.truncated_walks = truncated;
    fm.diag.dead_end_walks = dead_ends;
    fm.diag.total_deposits = deposits;
    return fm;
}

}  // namespace

FeatureMatrix build_features(const Graph& g, const WalkConfig& cfg, std::uint64_t slot) {
    if (g.num_nodes == 0) throw DomainError("build_features: empty graph");
    if (cfg.num_walks < 1) throw DomainError("build_features: num_walks must be >= 1");

    const auto& f = cfg.modulation;
    const int cap = cfg.effective_cap();
    // Deposits beyond f's truncation order are all zero; no need to keep
    // walking. Lengths past the termination support never occur.
    const int deposit_horizon =
        std::min({cap, f.k_max(), cfg.termination.max_length()});
    std::vector<double> weighted_f(deposit_horizon + 1);
    for (int t = 0; t <= deposit_horizon; ++t)
        weighted_f[t] = f(t) / cfg.termination.survival(t);

    auto fm = run_walks(
        g, cfg.num_walks, cfg.seed, slot, cfg.num_threads,
        [&](int start, SplitMix64& rng, auto&& deposit, std::uint64_t& truncated,
            std::uint64_t& dead_ends) {
            int s = cfg.termination.sample(rng);
            if (s > cap) {
                s = cap;
                ++truncated;
            }
            double load = 1.0;
            int cur = start;
            for (int t = 0; t <= s; ++t) {
                if (t > deposit_horizon) break;
                deposit(cur, load * weighted_f[t]);
                if (t == s) break;
                const int deg = g.degree[cur];
                if (deg == 0) {
                    ++dead_ends;
                    break;
                }
                const auto k = rng.below(static_cast<std::uint64_t>(deg));
                const int nxt = g.neighbors(cur)[k];
                load *= deg * g.neighbor_weights(cur)[k];
                cur = nxt;
            }
        });
    fm.config_hash = hash_config(cfg.num_walks, cfg.seed, f, cfg.termination.label());
    return fm;
}

FeatureMatrix build_features_alg1(const Graph& g, const ModulationFunction& f, double p_halt,
                                  int num_walks, std::uint64_t seed, std::uint64_t slot) {
    if (g.num_nodes == 0) throw DomainError("build_features_alg1: empty graph");
    if (!(p_halt > 0.0 && p_halt < 1.0))
        throw DomainError("build_features_alg1: p_halt must be in (0, 1)");
    const double inv_1mp = 1.0 / (1.0 - p_halt);
    const int horizon = f.k_max();

    auto fm = run_walks(
        g, num_walks, seed, slot, 1,
        [&](int start, SplitMix64& rng, auto&& deposit, std::uint64_t& /*truncated*/,
            std::uint64_t& dead_ends) {
            double load = 1.0;
            int cur = start;
            int t = 0;
            for (;;) {
                if (t <= horizon) deposit(cur, load * f(t));
                ++t;
                if (t > horizon) break;  // all further deposits are zero
                const int deg = g.degree[cur];
                if (deg == 0) {
                    ++dead_ends;
                    break;
                }
                const auto k = rng.below(static_cast<std::uint64_t>(deg));
                const int nxt = g.neighbors(cur)[k];
                load *= deg * inv_1mp * g.neighbor_weights(cur)[k];
                cur = nxt;
                if (rng.uniform() < p_halt) break;
            }
        });
    fm.config_hash = hash_config(num_walks, seed, f, "alg1");
    return fm;
}

std::vector<FeaturePair> build_feature_pairs(const Graph& g, const WalkConfig& cfg, int degree,
                                             bool reuse_walks) {
    if (degree < 1) throw DomainError("build_feature_pairs: degree must be >= 1");
    std::vector<FeaturePair> pairs;
    pairs.reserve(degree);
    if (reuse_walks) {
        auto shared = std::make_shared<const FeatureMatrix>(build_features(g, cfg, 0));
        for (int i = 0; i < degree; ++i) pairs.push_back({shared, shared});
        return pairs;
    }
    for (int i = 0; i < degree; ++i) {
        auto k1 = std::make_shared<const FeatureMatrix>(
            build_features(g, cfg, static_cast<std::uint64_t>(2 * i)));
        auto k2 = std::make_shared<const FeatureMatrix>(
            build_features(g, cfg, static_cast<std::uint64_t>(2 * i + 1)));
        pairs.push_back({std::move(k1), std::move(k2)});
    }
    return pairs;
}

void save_features(const FeatureMatrix& fm, const std::string& path) {
    nlohmann::json j;
    j["format"] = "grfpp-features";
    j["rows"] = fm.mat.rows;
    j["cols"] = fm.mat.cols;
    j["num_walks"] = fm.num_walks;
    j["seed"] = fm.seed;
    j["config_hash"] = fm.config_hash;
    auto& trip = j["triplets"] = nlohmann::json::array();
    for (int i = 0; i < fm.mat.rows; ++i)
        for (const auto& [c, v] : fm.mat.row[i]) trip.push_back({i, c, v});
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    out << j.dump();
}

FeatureMatrix load_features(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open features file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (j.value("format", "") != "grfpp-features")
        throw FormatError(path + ": not a grfpp feature file");
    FeatureMatrix fm;
    fm.mat = SparseMatrix(j.at("rows").get<int>(), j.at("cols").get<int>());
    fm.num_walks = j.at("num_walks").get<int>();
    fm.seed = j.at("seed").get<std::uint64_t>();
    fm.config_hash = j.value("config_hash", 0ULL);
    for (const auto& t : j.at("triplets"))
        fm.mat.row.at(t.at(0).get<int>()).emplace_back(t.at(1).get<int>(), t.at(2).get<double>());
    return fm;
}

}  // namespace grfpp
