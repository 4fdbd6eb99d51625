#include <doctest.h>

#include <cmath>

#include "grfpp/stitch.hpp"

using namespace grfpp;

namespace {

FeatureMatrixPtr wrap(SparseMatrix m) {
    FeatureMatrix fm;
    fm.num_walks = 1;
    fm.mat = std::move(m);
    return std::make_shared<const FeatureMatrix>(std::move(fm));
}

std::vector<FeaturePair> sample_pairs(int degree, std::uint64_t seed, int n = 12) {
    auto g = generate_erdos_renyi(n, 0.35, seed, NormalizationMode::row_max);
    WalkConfig cfg;
    cfg.num_walks = 24;
    cfg.modulation = root_modulation(preset_diffusion(1.0, 25), degree);
    cfg.termination = TerminationStrategy::bernoulli(0.4);
    cfg.seed = seed;
    return build_feature_pairs(g, cfg, degree);
}

}  // namespace

TEST_CASE("StitchMatrix densifies past the fill threshold") {
    SparseMatrix sparse(10, 10);
    sparse.row[0].emplace_back(3, 2.0);
    StitchMatrix a(sparse);
    CHECK(!a.is_dense());

    SparseMatrix dense_ish(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) dense_ish.row[i].emplace_back(j, 1.0);
    StitchMatrix b(dense_ish);
    CHECK(b.is_dense());
}

TEST_CASE("right_multiply agrees with the dense product in all four layouts") {
    SparseMatrix s1(6, 6), s2(6, 6);
    for (int i = 0; i < 6; ++i) {
        s1.row[i].emplace_back(i, 1.0 + i);
        if (i + 1 < 6) s1.row[i].emplace_back(i + 1, 0.5);
        s2.row[i].emplace_back(0, 0.3);
        if (i > 0) s2.row[i].emplace_back(i, 0.7);
    }
    DenseMatrix d1 = s1.to_dense(), d2 = s2.to_dense();
    DenseMatrix ref = multiply(d1, d2);

    const StitchMatrix variants1[] = {StitchMatrix(s1), StitchMatrix(d1)};
    const StitchMatrix variants2[] = {StitchMatrix(s2), StitchMatrix(d2)};
    for (const auto& a : variants1)
        for (const auto& b : variants2) {
            StitchMatrix prod = a;
            prod.right_multiply(b);
            CHECK(max_abs_diff(prod.to_dense(), ref) < 1e-14);
        }

    StitchMatrix bad(SparseMatrix(6, 5));
    StitchMatrix other(SparseMatrix(6, 6));
    CHECK_THROWS_AS(bad.right_multiply(other), ContractError);
}

TEST_CASE("StitchMatrix::apply matches dense matvec") {
    auto pairs = sample_pairs(1, 3);
    StitchMatrix m(pairs[0].k1->mat);
    std::vector<double> v(12);
    for (int i = 0; i < 12; ++i) v[i] = std::sin(i + 1.0);
    auto got = m.apply(v);
    auto want = matvec(m.to_dense(), v);
    for (int i = 0; i < 12; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-13));
}

TEST_CASE("degree 1: X and Y are the two factors themselves") {
    auto pairs = sample_pairs(1, 11);
    auto [x, y] = assemble_xy(pairs);
    CHECK(max_abs_diff(x.to_dense(), pairs[0].k1->mat.to_dense()) == 0.0);
    CHECK(max_abs_diff(y.to_dense(), pairs[0].k2->mat.to_dense()) == 0.0);
}

TEST_CASE("X Y^T equals the full stitched chain for degrees 1..4") {
    for (int l : {1, 2, 3, 4}) {
        auto pairs = sample_pairs(l, 100 + l);
        auto est = make_estimator(pairs, StitchMode::explicit_xy);
        auto full = materialize(est);
        auto [x, y] = assemble_xy(pairs);
        auto via_xy = multiply(x.to_dense(), transpose(y.to_dense()));
        CHECK(max_abs_diff(via_xy, full) < 1e-10);
    }
}

TEST_CASE("operator apply matches the materialized matrix") {
    for (int l : {1, 3}) {
        auto est = make_estimator(sample_pairs(l, 200 + l));
        auto full = materialize(est);
        std::vector<double> v(est.num_nodes());
        for (int i = 0; i < est.num_nodes(); ++i) v[i] = std::cos(0.3 * i);
        auto got = grfpp::apply(est, v);
        auto want = matvec(full, v);
        for (int i = 0; i < est.num_nodes(); ++i)
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
    }
}

TEST_CASE("identity factors collapse to the identity") {
    std::vector<FeaturePair> pairs;
    for (int i = 0; i < 3; ++i)
        pairs.push_back({wrap(SparseMatrix::identity(7)), wrap(SparseMatrix::identity(7))});
    auto est = make_estimator(pairs);
    CHECK(max_abs_diff(materialize(est), DenseMatrix::identity(7)) == 0.0);
}

TEST_CASE("JLT projection: seeded, zero-preserving, consistent apply") {
    auto pairs = sample_pairs(2, 42);
    auto a = project_jlt(*pairs[0].k1, 8, 77);
    auto b = project_jlt(*pairs[0].k1, 8, 77);
    CHECK(max_abs_diff(a, b) == 0.0);
    auto c = project_jlt(*pairs[0].k1, 8, 78);
    CHECK(max_abs_diff(a, c) > 0.0);

    FeatureMatrix zero;
    zero.mat = SparseMatrix(5, 5);
    auto z = project_jlt(zero, 8, 1);
    for (double v : z.data) CHECK(v == 0.0);

    auto est = make_estimator(pairs, StitchMode::jlt, 8, 7);
    REQUIRE(est.projected.size() == 4);
    std::vector<double> v(est.num_nodes());
    for (int i = 0; i < est.num_nodes(); ++i) v[i] = 1.0 / (i + 1.0);
    auto got = grfpp::apply(est, v);
    auto want = matvec(materialize(est), v);
    for (int i = 0; i < est.num_nodes(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
}

TEST_CASE("JLT estimator is unbiased for the unprojected product (Monte Carlo)") {
    auto pairs = sample_pairs(1, 5, 8);
    auto target = materialize(make_estimator(pairs));
    DenseMatrix mean(8, 8);
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        auto est = make_estimator(pairs, StitchMode::jlt, 16, 9000 + t);
        auto m = materialize(est);
        for (std::size_t i = 0; i < mean.data.size(); ++i) mean.data[i] += m.data[i];
    }
    for (double& v : mean.data) v /= trials;
    CHECK(max_abs_diff(mean, target) < 0.05 * (1.0 + target.frobenius_norm()));
}

TEST_CASE("contract guards") {
    auto pairs = sample_pairs(1, 8);
    auto est = make_estimator(pairs);
    CHECK_THROWS_AS(materialize(est, 4), ContractError);
    std::vector<double> short_v(3, 1.0);
    CHECK_THROWS_AS(grfpp::apply(est, short_v), ContractError);
    CHECK_THROWS_AS(make_estimator({}), DomainError);
    CHECK_THROWS_AS(make_estimator(pairs, StitchMode::jlt, 0), DomainError);
    CHECK_THROWS_AS(project_jlt(*pairs[0].k1, 0, 1), DomainError);
}
