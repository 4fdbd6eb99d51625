#pragma once

#include <string>
#include <vector>

#include "grfpp/errors.hpp"

namespace grfpp {

inline constexpr int kDefaultKMax = 30;

// Kernel coefficient sequence alpha_0..alpha_kmax of K = sum_k alpha_k W^k.
struct CoefficientSeries {
    std::vector<double> coeffs;
    std::string label = "custom";

    int k_max() const { return static_cast<int>(coeffs.size()) - 1; }
    double at(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : 0.0;
    }
};

// K = exp(lambda * W): alpha_k = lambda^k / k!
CoefficientSeries preset_diffusion(double lambda, int k_max = kDefaultKMax);

// K = (I - gamma W)^{-1}: alpha_k = gamma^k
CoefficientSeries preset_geometric(double gamma, int k_max = kDefaultKMax);

CoefficientSeries custom_series(std::vector<double> coeffs);

// Per-step deposit weights f(0..k_max); the 2l-fold self-convolution of f
// must reproduce alpha.
struct ModulationFunction {
    std::vector<double> values;
    int degree = 1;  // stitching degree l

    double operator()(int k) const {
        return (k >= 0 && k < static_cast<int>(values.size())) ? values[k] : 0.0;
    }
    int k_max() const { return static_cast<int>(values.size()) - 1; }
};

// Identity modulation: f = (1, 0, 0, ...). Every estimator collapses to I.
ModulationFunction identity_modulation(int k_max = kDefaultKMax, int degree = 1);

// Taylor coefficients of g(x)^(1/(2l)) where g(x) = sum_k alpha_k x^k,
// via the power-series root recurrence. Requires alpha_0 > 0.
ModulationFunction root_modulation(const CoefficientSeries& alpha, int degree);

// Max_k |(2l-fold self-convolution of f)_k - alpha_k| for k <= k_max.
double verify_convolution(const ModulationFunction& f, const CoefficientSeries& alpha,
                          int k_max);

}  // namespace grfpp
