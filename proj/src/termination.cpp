#include "grfpp/termination.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace grfpp {

TerminationStrategy TerminationStrategy::bernoulli(double p_halt) {
    if (!(p_halt > 0.0 && p_halt < 1.0))
        throw DomainError("bernoulli termination: p_halt must be in (0, 1)");
    TerminationStrategy t;
    t.kind_ = Kind::bernoulli;
    t.p_halt_ = p_halt;
    t.log1m_p_ = std::log1p(-p_halt);
    t.label_ = "bernoulli:" + std::to_string(p_halt);
    return t;
}

TerminationStrategy TerminationStrategy::from_table(std::vector<double> pmf,
                                                    std::string label) {
    if (pmf.empty()) throw DomainError("termination table: empty distribution");
    double total = 0.0;
    for (double p : pmf) {
        if (p < 0.0) throw DomainError("termination table: negative probability");
        total += p;
    }
    if (total <= 0.0) throw DomainError("termination table: zero total mass");
    for (double& p : pmf) p /= total;

    TerminationStrategy t;
    t.kind_ = Kind::table;
    t.pmf_ = std::move(pmf);
    t.cdf_.resize(t.pmf_.size());
    double c = 0.0;
    for (std::size_t k = 0; k < t.pmf_.size(); ++k) {
        c += t.pmf_[k];
        t.cdf_[k] = c;
    }
    t.cdf_.back() = 1.0;
    // Survival by backward summation keeps the tail accurate.
    t.survival_.resize(t.pmf_.size());
    double s = 0.0;
    for (std::size_t k = t.pmf_.size(); k-- > 0;) {
        s += t.pmf_[k];
        t.survival_[k] = s;
    }
    t.survival_[0] = 1.0;
    t.label_ = std::move(label);
    return t;
}

TerminationStrategy TerminationStrategy::poisson(double mean) {
    if (!(mean > 0.0)) throw DomainError("poisson termination: mean must be positive");
    // Truncate where the tail drops below 1e-15 and fold the remainder into
    // the last bucket.
    std::vector<double> pmf;
    double p = std::exp(-mean);
    double cum = 0.0;
    int k = 0;
    while (true) {
        pmf.push_back(p);
        cum += p;
        ++k;
        if (k > mean && 1.0 - cum < 1e-15) break;
        if (k > 100000) break;
        p *= mean / k;
    }
    pmf.back() += std::max(0.0, 1.0 - cum);
    return from_table(std::move(pmf), "poisson:" + std::to_string(mean));
}

TerminationStrategy TerminationStrategy::empirical(std::vector<double> pmf) {
    return from_table(std::move(pmf), "empirical");
}

TerminationStrategy TerminationStrategy::load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open termination table: " + path);
    std::vector<double> pmf;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        int k;
        double p;
        if (!(ls >> k)) continue;
        if (!(ls >> p) || k < 0)
            throw ParseError(path + ":" + std::to_string(line_no) + ": malformed table line");
        if (k >= static_cast<int>(pmf.size())) pmf.resize(k + 1, 0.0);
        pmf[k] = p;
    }
    auto t = from_table(std::move(pmf), "table:" + path);
    return t;
}

TerminationStrategy TerminationStrategy::parse(const std::string& spec) {
    const auto pos = spec.find(':');
    if (pos == std::string::npos)
        throw ParseError("termination spec must look like kind:param, got: " + spec);
    const std::string kind = spec.substr(0, pos);
    const std::string arg = spec.substr(pos + 1);
    if (kind == "bernoulli") return bernoulli(std::stod(arg));
    if (kind == "poisson") return poisson(std::stod(arg));
    if (kind == "table") return load_table(arg);
    throw ParseError("unknown termination kind: " + kind);
}

int TerminationStrategy::sample(SplitMix64& rng) const {
    if (kind_ == Kind::bernoulli) {
        // Geometric by inversion: P(X = k) = (1-p)^k p.
        const double u = std::max(rng.uniform(), 1e-300);
        return static_cast<int>(std::floor(std::log(u) / log1m_p_));
    }
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1));
}

double TerminationStrategy::survival(int k) const {
    if (k < 0) throw DomainError("survival: k must be nonnegative");
    if (k == 0) return 1.0;
    if (kind_ == Kind::bernoulli) return std::pow(1.0 - p_halt_, k);
    if (k >= static_cast<int>(survival_.size()) || survival_[k] <= 0.0)
        throw DomainError("survival: tau(" + std::to_string(k) + ") = 0, length unreachable");
    return survival_[k];
}

double TerminationStrategy::pmf(int k) const {
    if (k < 0) return 0.0;
    if (kind_ == Kind::bernoulli) return std::pow(1.0 - p_halt_, k) * p_halt_;
    return k < static_cast<int>(pmf_.size()) ? pmf_[k] : 0.0;
}

double TerminationStrategy::mean_length() const {
    if (kind_ == Kind::bernoulli) return (1.0 - p_halt_) / p_halt_;
    double m = 0.0;
    for (std::size_t k = 0; k < pmf_.size(); ++k) m += static_cast<double>(k) * pmf_[k];
    return m;
}

int TerminationStrategy::max_length() const {
    if (kind_ == Kind::bernoulli) return std::numeric_limits<int>::max();
    return static_cast<int>(pmf_.size()) - 1;
}

std::vector<int> sample_lengths(const TerminationStrategy& strategy, int m,
                                std::uint64_t seed) {
    if (m < 1) throw DomainError("sample_lengths: m must be >= 1");
    std::vector<int> lengths(m);
    for (int w = 0; w < m; ++w) {
        SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(w)));
        lengths[w] = strategy.sample(rng);
    }
    return lengths;
}

}  // namespace grfpp
