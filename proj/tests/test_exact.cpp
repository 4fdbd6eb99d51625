#include <doctest.h>

#include <cmath>

#include "grfpp/exact.hpp"
#include "grfpp/stitch.hpp"

using namespace grfpp;

TEST_CASE("exp(W) on the single-edge graph is [[cosh, sinh], [sinh, cosh]]") {
    auto g = build_graph(2, {{0, 1, 1.0}});
    auto k = exact_kernel(g, preset_diffusion(1.0, 30));
    CHECK(k.matrix(0, 0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
    CHECK(k.matrix(0, 1) == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
    CHECK(k.matrix(1, 1) == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
    CHECK(k.converged());
}

TEST_CASE("geometric kernel matches the closed-form resolvent") {
    // (I - 0.5 W)^-1 for the single-edge graph: 1/(1-0.25) * [[1, 0.5], [0.5, 1]]
    auto g = build_graph(2, {{0, 1, 1.0}});
    auto k = exact_kernel(g, preset_geometric(0.5, 40));
    CHECK(k.matrix(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(k.matrix(0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("degenerate cases: identity series and isolated node") {
    auto g = build_graph(3, {{0, 1, 0.5}, {1, 2, 0.5}});
    auto k = exact_kernel(g, custom_series({1.0, 0.0, 0.0}));
    CHECK(max_abs_diff(k.matrix, DenseMatrix::identity(3)) == 0.0);

    auto lone = build_graph(1, {});
    auto kl = exact_kernel(lone, preset_diffusion(2.0, 30));
    CHECK(kl.matrix(0, 0) == 1.0);  // W = 0, only alpha_0 survives
}

TEST_CASE("divergent series on an unnormalized graph is rejected") {
    auto g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, NormalizationMode::none);
    CHECK_THROWS_AS(exact_kernel(g, preset_geometric(0.9, 30)), ConvergenceError);
    // the same series converges after normalization
    auto gn = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, NormalizationMode::row_max);
    CHECK_NOTHROW(exact_kernel(gn, preset_geometric(0.9, 60)));
}

TEST_CASE("dense limit guard") {
    auto g = generate_erdos_renyi(10, 0.5, 1);
    CHECK_THROWS_AS(exact_kernel(g, preset_diffusion(1.0, 10), 5), DomainError);
}

TEST_CASE("masked_error basics") {
    DenseMatrix a(2, 2), b(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 4.0;
    b = a;
    CHECK(masked_error(a, b, mask_all()) == 0.0);
    b(0, 0) = 3.5;
    // sqrt(0.25 / 25)
    CHECK(masked_error(a, b, mask_all()) == doctest::Approx(0.1).epsilon(1e-12));
    auto none = [](int, int) { return false; };
    CHECK_THROWS_AS(masked_error(a, b, none), DomainError);
    DenseMatrix c(3, 3);
    CHECK_THROWS_AS(masked_error(a, c, mask_all()), ContractError);
}

TEST_CASE("mask_min_hops keeps only far pairs") {
    auto g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    auto mask = mask_min_hops(shortest_path_distances(g), 2.0);
    CHECK(mask(0, 2));
    CHECK(mask(2, 0));
    CHECK(!mask(0, 1));
    CHECK(!mask(0, 0));
}

TEST_CASE("stitched estimator is unbiased: mean over trials approaches exact") {
    auto g = build_graph(5, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}, {3, 4, 0.5}, {4, 0, 0.5}});
    auto alpha = preset_diffusion(1.0, 25);
    auto exact = exact_kernel(g, alpha).matrix;
    WalkConfig cfg;
    cfg.num_walks = 50;
    cfg.modulation = root_modulation(alpha, 2);
    cfg.termination = TerminationStrategy::poisson(2.0);
    DenseMatrix mean(5, 5);
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        cfg.seed = mix_seed(777, t);
        auto est = make_estimator(build_feature_pairs(g, cfg, 2));
        auto m = materialize(est);
        for (std::size_t i = 0; i < mean.data.size(); ++i) mean.data[i] += m.data[i];
    }
    for (double& v : mean.data) v /= trials;
    CHECK(masked_error(exact, mean, mask_all()) < 0.02);
}

TEST_CASE("empirical_mse: identity kernel has zero error") {
    auto g = build_graph(4, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}});
    WalkConfig cfg;
    cfg.num_walks = 4;
    cfg.termination = TerminationStrategy::bernoulli(0.5);
    auto rep = empirical_mse(g, custom_series({1.0, 0.0, 0.0}), 1, cfg, 10);
    CHECK(rep.empirical_mse == 0.0);
    CHECK(rep.empirical_se == 0.0);
    CHECK(!rep.has_prediction);
}

TEST_CASE("empirical_mse decreases with the number of walks") {
    auto g = build_graph(4, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}, {0, 3, 0.5}});
    auto alpha = preset_diffusion(1.0, 20);
    WalkConfig cfg;
    cfg.termination = TerminationStrategy::bernoulli(0.5);
    cfg.seed = 13;
    cfg.num_walks = 8;
    auto lo = empirical_mse(g, alpha, 1, cfg, 60);
    cfg.num_walks = 64;
    auto hi = empirical_mse(g, alpha, 1, cfg, 60);
    CHECK(hi.empirical_mse < lo.empirical_mse / 2.0);
}

TEST_CASE("empirical_mse is deterministic across thread counts") {
    auto g = build_graph(4, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}});
    auto alpha = preset_diffusion(1.0, 20);
    WalkConfig cfg;
    cfg.termination = TerminationStrategy::bernoulli(0.5);
    cfg.seed = 4;
    cfg.num_walks = 8;
    cfg.num_threads = 1;
    auto a = empirical_mse(g, alpha, 2, cfg, 40);
    cfg.num_threads = 4;
    auto b = empirical_mse(g, alpha, 2, cfg, 40);
    CHECK(a.empirical_mse == b.empirical_mse);
    CHECK(a.predicted_mse == b.predicted_mse);
}

TEST_CASE("degree-2 closed-form variance prediction agrees with the empirical MSE") {
    auto g = build_graph(4, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}, {0, 3, 0.5}});
    auto alpha = preset_diffusion(1.0, 20);
    WalkConfig cfg;
    cfg.termination = TerminationStrategy::bernoulli(0.5);
    cfg.seed = 71;
    cfg.num_walks = 10;
    auto rep = empirical_mse(g, alpha, 2, cfg, 400);
    REQUIRE(rep.has_prediction);
    const double se = std::sqrt(rep.empirical_se * rep.empirical_se + rep.predicted_se * rep.predicted_se);
    CHECK(std::abs(rep.predicted_mse - rep.empirical_mse) < 4.0 * se);
}
