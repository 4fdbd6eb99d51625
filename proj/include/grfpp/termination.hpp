#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "grfpp/errors.hpp"
#include "grfpp/rng.hpp"

namespace grfpp {

// Walk-length distribution P on {0, 1, 2, ...} with sampler and survival
// function tau(k) = P(X >= k). A length-s walk makes s transitions and s+1
// deposits. Immutable after construction.
class TerminationStrategy {
  public:
    static TerminationStrategy bernoulli(double p_halt);
    static TerminationStrategy poisson(double mean);
    static TerminationStrategy empirical(std::vector<double> pmf);
    static TerminationStrategy load_table(const std::string& path);

    // "bernoulli:0.1" | "poisson:9" | "table:<path>"
    static TerminationStrategy parse(const std::string& spec);

    int sample(SplitMix64& rng) const;
    double survival(int k) const;  // throws DomainError where tau(k) = 0
    double pmf(int k) const;
    double mean_length() const;
    // Largest length with positive probability; INT_MAX for bernoulli.
    int max_length() const;
    const std::string& label() const { return label_; }

  private:
    enum class Kind { bernoulli, table };
    Kind kind_ = Kind::bernoulli;
    double p_halt_ = 0.5;
    double log1m_p_ = 0.0;           // log(1 - p_halt), cached for sampling
    std::vector<double> pmf_;        // table kinds
    std::vector<double> cdf_;
    std::vector<double> survival_;
    std::string label_;

    TerminationStrategy() = default;
    static TerminationStrategy from_table(std::vector<double> pmf, std::string label);
};

std::vector<int> sample_lengths(const TerminationStrategy& strategy, int m,
                                std::uint64_t seed);

}  // namespace grfpp
