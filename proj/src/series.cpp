#include "grfpp/series.hpp"

#include <algorithm>
#include <cmath>

namespace grfpp {

CoefficientSeries preset_diffusion(double lambda, int k_max) {
    if (lambda <= 0.0) throw DomainError("diffusion: lambda must be positive");
    if (k_max < 1) throw DomainError("series: k_max must be >= 1");
    CoefficientSeries s;
    s.label = "diffusion";
    s.coeffs.resize(k_max + 1);
    s.coeffs[0] = 1.0;
    for (int k = 1; k <= k_max; ++k) s.coeffs[k] = s.coeffs[k - 1] * lambda / k;
    return s;
}

CoefficientSeries preset_geometric(double gamma, int k_max) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("geometric: gamma must be in (0, 1)");
    if (k_max < 1) throw DomainError("series: k_max must be >= 1");
    CoefficientSeries s;
    s.label = "geometric";
    s.coeffs.resize(k_max + 1);
    s.coeffs[0] = 1.0;
    for (int k = 1; k <= k_max; ++k) s.coeffs[k] = s.coeffs[k - 1] * gamma;
    return s;
}

CoefficientSeries custom_series(std::vector<double> coeffs) {
    if (coeffs.size() < 2) throw DomainError("series: need k_max >= 1");
    CoefficientSeries s;
    s.coeffs = std::move(coeffs);
    return s;
}

ModulationFunction identity_modulation(int k_max, int degree) {
    ModulationFunction f;
    f.degree = degree;
    f.values.assign(k_max + 1, 0.0);
    f.values[0] = 1.0;
    return f;
}

ModulationFunction root_modulation(const CoefficientSeries& alpha, int degree) {
    if (degree < 1) throw DomainError("root_modulation: degree must be >= 1");
    const double a0 = alpha.at(0);
    if (a0 <= 0.0) throw DomainError("root_modulation: alpha_0 must be positive");

    const int n_coeffs = static_cast<int>(alpha.coeffs.size());
    const double r = 1.0 / (2.0 * degree);
    ModulationFunction f;
    f.degree = degree;
    f.values.resize(n_coeffs);
    f.values[0] = std::pow(a0, r);
    // Miller recurrence for h = g^r: n*a0*f(n) = sum_{k=1..n} (k*r - (n-k)) alpha_k f(n-k)
    for (int n = 1; n < n_coeffs; ++n) {
        double s = 0.0;
        for (int k = 1; k <= n; ++k) s += (k * r - (n - k)) * alpha.coeffs[k] * f.values[n - k];
        f.values[n] = s / (n * a0);
    }
    return f;
}

namespace {

// Truncated discrete convolution, length kept at k_max + 1.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b,
                             int k_max) {
    std::vector<double> c(k_max + 1, 0.0);
    const int na = std::min<int>(static_cast<int>(a.size()), k_max + 1);
    for (int i = 0; i < na; ++i) {
        const int nb = std::min<int>(static_cast<int>(b.size()), k_max + 1 - i);
        for (int j = 0; j < nb; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

}  // namespace

double verify_convolution(const ModulationFunction& f, const CoefficientSeries& alpha,
                          int k_max) {
    if (k_max > f.k_max() || k_max > alpha.k_max())
        throw DomainError("verify_convolution: k_max exceeds truncation order");
    // Fold pairwise: h2 = f*f, then multiply l copies of h2.
    std::vector<double> h2 = convolve(f.values, f.values, k_max);
    std::vector<double> acc = h2;
    for (int i = 1; i < f.degree; ++i) acc = convolve(acc, h2, k_max);
    double dev = 0.0;
    for (int k = 0; k <= k_max; ++k) dev = std::max(dev, std::abs(acc[k] - alpha.coeffs[k]));
    return dev;
}

}  // namespace grfpp
