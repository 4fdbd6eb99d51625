#include "grfpp/exact.hpp"

#include <cmath>
#include <thread>

#include "grfpp/stitch.hpp"

namespace grfpp {

namespace {

// P <- P * W with sparse W (column access via symmetry of W).
DenseMatrix times_graph(const DenseMatrix& p, const Graph& g) {
    DenseMatrix out(p.rows, g.num_nodes);
    for (int i = 0; i < p.rows; ++i)
        for (int k = 0; k < p.cols; ++k) {
            const double pik = p(i, k);
            if (pik == 0.0) continue;
            auto cols = g.neighbors(k);
            auto vals = g.neighbor_weights(k);
            for (std::size_t t = 0; t < cols.size(); ++t) out(i, cols[t]) += pik * vals[t];
        }
    return out;
}

double tail_ratio(const CoefficientSeries& alpha, double norm) {
    const int k = alpha.k_max();
    if (alpha.label == "diffusion" && alpha.coeffs.size() > 1) {
        const double lambda = alpha.coeffs[1];
        return lambda * norm / (k + 1);
    }
    if (alpha.label == "geometric" && alpha.coeffs.size() > 1) {
        return alpha.coeffs[1] * norm;
    }
    const double tk = std::abs(alpha.at(k)) * std::pow(norm, k);
    const double tk1 = std::abs(alpha.at(k - 1)) * std::pow(norm, k - 1);
    return tk1 > 0.0 ? tk / tk1 : 0.0;
}

}  // namespace

ExactKernel exact_kernel(const Graph& g, const CoefficientSeries& alpha, int dense_limit) {
    if (g.num_nodes > dense_limit)
        throw DomainError("exact_kernel: graph exceeds dense limit of " +
                          std::to_string(dense_limit) + " nodes");
    const int k_max = alpha.k_max();
    const double norm = g.max_weighted_row_sum();
    const double last_term = std::abs(alpha.at(k_max)) * std::pow(norm, k_max);
    const double q = tail_ratio(alpha, norm);
    if (q >= 1.0 && last_term > 1e-12)
        throw ConvergenceError(
            "exact_kernel: series does not converge at ||W||_inf = " + std::to_string(norm) +
            "; normalize the graph (row_max or sym_degree)");

    ExactKernel out;
    out.series = alpha;
    out.matrix = DenseMatrix(g.num_nodes, g.num_nodes);
    DenseMatrix power = DenseMatrix::identity(g.num_nodes);
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) power = times_graph(power, g);
        const double ak = alpha.coeffs[k];
        if (ak != 0.0)
            for (std::size_t i = 0; i < power.data.size(); ++i)
                out.matrix.data[i] += ak * power.data[i];
    }
    out.tail_bound = q < 1.0 ? last_term * q / (1.0 - q) * g.num_nodes : last_term;
    return out;
}

PairMask mask_all() {
    return [](int, int) { return true; };
}

PairMask mask_min_hops(const DenseMatrix& distances, double min_hops) {
    return [distances, min_hops](int i, int j) { return distances(i, j) >= min_hops; };
}

double masked_error(const DenseMatrix& exact, const DenseMatrix& estimate,
                    const PairMask& mask) {
    if (exact.rows != estimate.rows || exact.cols != estimate.cols)
        throw ContractError("masked_error: shape mismatch");
    double num = 0.0, den = 0.0;
    for (int i = 0; i < exact.rows; ++i)
        for (int j = 0; j < exact.cols; ++j) {
            if (!mask(i, j)) continue;
            const double d = exact(i, j) - estimate(i, j);
            num += d * d;
            den += exact(i, j) * exact(i, j);
        }
    if (den == 0.0) throw DomainError("masked_error: masked ground truth is all zero");
    return std::sqrt(num / den);
}

MseReport empirical_mse(const Graph& g, const CoefficientSeries& alpha, int degree,
                        const WalkConfig& cfg, int trials, bool reuse_walks) {
    if (trials < 2) throw DomainError("empirical_mse: need at least 2 trials");
    const ExactKernel oracle = exact_kernel(g, alpha);
    const DenseMatrix& k_exact = oracle.matrix;
    const double k_norm2 = std::pow(k_exact.frobenius_norm(), 2);
    const int n = g.num_nodes;

    WalkConfig base = cfg;
    base.modulation = root_modulation(alpha, degree);

    constexpr int kBatches = 20;
    const int n_batches = std::min(kBatches, trials);
    std::vector<double> mse_sum(n_batches, 0.0), mse_sq(n_batches, 0.0);
    std::vector<DenseMatrix> gram(n_batches, DenseMatrix(n, n));
    std::vector<int> batch_count(n_batches, 0);

    auto run_batch = [&](int b) {
        const int lo = static_cast<int>(static_cast<long long>(b) * trials / n_batches);
        const int hi = static_cast<int>(static_cast<long long>(b + 1) * trials / n_batches);
        for (int t = lo; t < hi; ++t) {
            WalkConfig trial_cfg = base;
            trial_cfg.seed = mix_seed(base.seed, static_cast<std::uint64_t>(t));
            trial_cfg.num_threads = 1;
            auto pairs = build_feature_pairs(g, trial_cfg, degree, reuse_walks);
            auto est = make_estimator(pairs, StitchMode::op);
            DenseMatrix k_hat = materialize(est);
            double err2 = 0.0;
            for (std::size_t i = 0; i < k_hat.data.size(); ++i) {
                const double d = k_hat.data[i] - k_exact.data[i];
                err2 += d * d;
            }
            mse_sum[b] += err2;
            mse_sq[b] += err2 * err2;
            ++batch_count[b];
            if (degree == 2) {
                DenseMatrix x1 = multiply(pairs[0].k1->mat.to_dense(),
                                          transpose(pairs[0].k2->mat.to_dense()));
                DenseMatrix gr = multiply(transpose(x1), x1);
                for (std::size_t i = 0; i < gr.data.size(); ++i) gram[b].data[i] += gr.data[i];
            }
        }
    };

    const int threads = std::max(1, cfg.num_threads);
    if (threads == 1) {
        for (int b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int b = t; b < n_batches; b += threads) run_batch(b);
            });
        for (auto& th : pool) th.join();
    }

    MseReport rep;
    double total = 0.0, total_sq = 0.0;
    for (int b = 0; b < n_batches; ++b) {
        total += mse_sum[b];
        total_sq += mse_sq[b];
    }
    rep.empirical_mse = total / trials;
    const double var = (total_sq / trials - rep.empirical_mse * rep.empirical_mse) *
                       trials / (trials - 1.0);
    rep.empirical_se = std::sqrt(std::max(0.0, var) / trials);

    if (degree == 2) {
        rep.has_prediction = true;
        DenseMatrix mean_gram(n, n);
        std::vector<double> batch_pred;
        for (int b = 0; b < n_batches; ++b) {
            if (batch_count[b] == 0) continue;
            DenseMatrix gb = gram[b];
            for (double& v : gb.data) v /= batch_count[b];
            batch_pred.push_back(std::pow(gb.frobenius_norm(), 2) - k_norm2);
            for (std::size_t i = 0; i < gb.data.size(); ++i) mean_gram.data[i] += gram[b].data[i];
        }
        for (double& v : mean_gram.data) v /= trials;
        rep.predicted_mse = std::pow(mean_gram.frobenius_norm(), 2) - k_norm2;
        double mean_bp = 0.0;
        for (double v : batch_pred) mean_bp += v;
        mean_bp /= batch_pred.size();
        double sd = 0.0;
        for (double v : batch_pred) sd += (v - mean_bp) * (v - mean_bp);
        sd = std::sqrt(sd / (batch_pred.size() - 1.0));
        rep.predicted_se = sd / std::sqrt(static_cast<double>(batch_pred.size()));
    }
    return rep;
}

}  // namespace grfpp
