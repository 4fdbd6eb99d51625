#include <doctest.h>

#include <cmath>
#include <fstream>

#include "grfpp/termination.hpp"

using namespace grfpp;

TEST_CASE("bernoulli survival is exact") {
    auto t = TerminationStrategy::bernoulli(0.1);
    CHECK(t.survival(0) == 1.0);
    CHECK(t.survival(2) == doctest::Approx(0.81).epsilon(1e-15));
    CHECK(t.mean_length() == doctest::Approx(9.0).epsilon(1e-15));
}

TEST_CASE("poisson survival: tau(2) for mean 2") {
    auto t = TerminationStrategy::poisson(2.0);
    CHECK(t.survival(0) == 1.0);
    // 1 - e^-2 (1 + 2), cross-checked by summing the pmf
    CHECK(t.survival(2) == doctest::Approx(1.0 - std::exp(-2.0) * 3.0).epsilon(1e-12));
    double tail = 0.0;
    for (int k = 2; k <= t.max_length(); ++k) tail += t.pmf(k);
    CHECK(t.survival(2) == doctest::Approx(tail).epsilon(1e-12));
}

TEST_CASE("pmf sums to one; survival differences recover pmf") {
    for (const auto& t : {TerminationStrategy::bernoulli(0.3), TerminationStrategy::poisson(4.5),
                          TerminationStrategy::empirical({0.2, 0.5, 0.3})}) {
        double total = 0.0;
        const int hi = std::min(t.max_length(), 2000);
        for (int k = 0; k <= hi; ++k) total += t.pmf(k);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        for (int k = 0; k < std::min(hi, 50); ++k) {
            double s_k1;
            try {
                s_k1 = t.survival(k + 1);
            } catch (const DomainError&) {
                s_k1 = 0.0;  // past the support
            }
            CHECK(t.survival(k) - s_k1 == doctest::Approx(t.pmf(k)).epsilon(1e-9));
        }
    }
}

TEST_CASE("sample_lengths: deterministic, matches the target mean") {
    auto b = TerminationStrategy::bernoulli(0.1);
    auto lens = sample_lengths(b, 100000, 42);
    auto lens2 = sample_lengths(b, 100000, 42);
    CHECK(lens == lens2);
    double mean = 0.0;
    for (int v : lens) mean += v;
    mean /= lens.size();
    CHECK(mean == doctest::Approx(9.0).epsilon(0.05));

    auto p = TerminationStrategy::poisson(9.0);
    auto plens = sample_lengths(p, 100000, 43);
    double pmean = 0.0;
    for (int v : plens) pmean += v;
    pmean /= plens.size();
    CHECK(pmean == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("high halting probability: nearly all walks have length 0") {
    auto lens = sample_lengths(TerminationStrategy::bernoulli(0.95), 10000, 7);
    double mean = 0.0;
    for (int v : lens) mean += v;
    mean /= lens.size();
    CHECK(mean < 0.1);
}

TEST_CASE("survival beyond support is a domain error") {
    auto e = TerminationStrategy::empirical({0.5, 0.5});
    CHECK(e.max_length() == 1);
    CHECK(e.survival(1) == doctest::Approx(0.5));
    CHECK_THROWS_AS(e.survival(2), DomainError);
    CHECK_THROWS_AS(e.survival(-1), DomainError);
}

TEST_CASE("parse termination specs") {
    CHECK(TerminationStrategy::parse("bernoulli:0.25").mean_length() == doctest::Approx(3.0));
    CHECK(TerminationStrategy::parse("poisson:9").mean_length() == doctest::Approx(9.0));
    const std::string path = "/tmp/grfpp_test_term_table.txt";
    std::ofstream(path) << "# k prob\n0 0.5\n1 0.25\n2 0.25\n";
    auto t = TerminationStrategy::parse("table:" + path);
    CHECK(t.pmf(1) == doctest::Approx(0.25));
    CHECK(t.survival(2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(TerminationStrategy::parse("nope:1"), ParseError);
    CHECK_THROWS_AS(TerminationStrategy::parse("bernoulli"), ParseError);
    CHECK_THROWS_AS(TerminationStrategy::bernoulli(0.0), DomainError);
    CHECK_THROWS_AS(TerminationStrategy::poisson(-1.0), DomainError);
}
