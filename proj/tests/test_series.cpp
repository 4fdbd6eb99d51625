#include <doctest.h>

#include <cmath>

#include "grfpp/series.hpp"

using namespace grfpp;

TEST_CASE("preset_diffusion: Taylor coefficients of exp") {
    auto s = preset_diffusion(1.0, 3);
    CHECK(s.coeffs[0] == 1.0);
    CHECK(s.coeffs[1] == 1.0);
    CHECK(s.coeffs[2] == 0.5);
    CHECK(s.coeffs[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(preset_diffusion(2.0, 4).coeffs[2] == 2.0);
    CHECK(preset_diffusion(0.5, 4).coeffs[1] == 0.5);
}

TEST_CASE("preset_geometric") {
    auto s = preset_geometric(0.5, 4);
    CHECK(s.coeffs[0] == 1.0);
    CHECK(s.coeffs[2] == 0.25);
    CHECK(preset_geometric(0.9, 4).coeffs[3] == doctest::Approx(0.729).epsilon(1e-15));
    CHECK_THROWS_AS(preset_geometric(1.0, 4), DomainError);
    CHECK_THROWS_AS(preset_diffusion(-1.0, 4), DomainError);
}

TEST_CASE("root_modulation: diffusion closed form f(p) = (lambda/(2l))^p / p!") {
    for (int l : {1, 2, 3}) {
        auto f = root_modulation(preset_diffusion(1.0, 20), l);
        double expect = 1.0;
        for (int p = 0; p <= 15; ++p) {
            if (p > 0) expect *= 1.0 / (2.0 * l * p);
            CHECK(f(p) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("root_modulation: geometric l=1 matches binomial series of (1-x/2)^(-1/2)") {
    auto f = root_modulation(preset_geometric(0.5, 10), 1);
    CHECK(f(0) == doctest::Approx(1.0));
    CHECK(f(1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(f(2) == doctest::Approx(3.0 / 32.0).epsilon(1e-14));
}

TEST_CASE("root_modulation rejects nonpositive alpha_0") {
    CHECK_THROWS_AS(root_modulation(custom_series({0.0, 1.0}), 1), DomainError);
    CHECK_THROWS_AS(root_modulation(custom_series({-1.0, 1.0}), 1), DomainError);
}

TEST_CASE("verify_convolution: diffusion and identity") {
    auto alpha = preset_diffusion(1.0, 20);
    CHECK(verify_convolution(root_modulation(alpha, 1), alpha, 10) < 1e-12);
    auto id = custom_series({1.0, 0.0, 0.0, 0.0});
    ModulationFunction f_id = identity_modulation(3, 2);
    CHECK(verify_convolution(f_id, id, 3) == 0.0);
    auto geo = preset_geometric(0.5, 20);
    CHECK(verify_convolution(root_modulation(geo, 2), geo, 10) < 1e-10);
}

TEST_CASE("property: presets satisfy the convolution identity up to k=20") {
    std::vector<CoefficientSeries> presets = {
        preset_diffusion(0.5, 25), preset_diffusion(1.0, 25), preset_diffusion(2.0, 25),
        preset_geometric(0.5, 25), preset_geometric(0.9, 25)};
    for (const auto& alpha : presets)
        for (int l : {1, 2, 3, 4})
            CHECK(verify_convolution(root_modulation(alpha, l), alpha, 20) <= 1e-10);
}

TEST_CASE("property: fourth root equals square root of square root") {
    auto alpha = preset_geometric(0.7, 20);
    auto f4 = root_modulation(alpha, 2);  // (2l)=4th root
    auto half = root_modulation(alpha, 1);
    CoefficientSeries half_series;
    half_series.coeffs = half.values;
    auto f4b = root_modulation(half_series, 1);
    for (int p = 0; p <= 20; ++p)
        CHECK(f4(p) == doctest::Approx(f4b(p)).epsilon(1e-12));
}

TEST_CASE("property: scaling alpha by c scales f by c^(1/(2l))") {
    auto alpha = preset_diffusion(1.3, 15);
    const double c = 2.7;
    CoefficientSeries scaled = alpha;
    for (double& v : scaled.coeffs) v *= c;
    for (int l : {1, 3}) {
        auto f = root_modulation(alpha, l);
        auto fs = root_modulation(scaled, l);
        const double factor = std::pow(c, 1.0 / (2.0 * l));
        for (int p = 0; p <= 15; ++p)
            CHECK(fs(p) == doctest::Approx(factor * f(p)).epsilon(1e-12));
    }
}
