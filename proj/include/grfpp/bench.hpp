#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "grfpp/exact.hpp"
#include "grfpp/graph.hpp"
#include "grfpp/series.hpp"

namespace grfpp {

struct ExperimentSpec {
    std::string graph_label = "graph";
    CoefficientSeries alpha;
    std::vector<int> degrees{1};
    std::vector<int> walk_counts{16};
    std::vector<std::string> terminations{"bernoulli:0.1"};
    int repetitions = 10;
    std::uint64_t seed = 0;
    double mask_min_hops = 0.0;  // 0 => all pairs
    bool reuse_walks = false;
    int num_threads = 1;
    // run_timing only: bernoulli base probability, scaled by the degree.
    double timing_p_base = 0.01;
};

struct BenchRecord {
    std::string graph;
    std::string kernel;
    int degree = 1;
    int num_walks = 0;
    std::string termination;
    bool reuse_walks = false;
    int repetitions = 0;
    std::uint64_t seed = 0;
    double mask_min_hops = 0.0;
    double error_mean = 0.0;
    double error_std = 0.0;
    double walk_time_s = 0.0;
    double stitch_time_s = 0.0;
    double factor_nnz_mean = 0.0;

    static std::string csv_header();
    std::string csv_row() const;
    std::string json_line() const;
};

void write_records(std::ostream& out, const std::vector<BenchRecord>& records,
                   bool as_json);

// Error-vs-m curves: s repetitions per (degree, m, termination) cell.
std::vector<BenchRecord> run_error_sweep(const Graph& g, const ExperimentSpec& spec);

// Walk/stitch wall-clock breakdown at p_halt = timing_p_base * degree; one
// warm-up run discarded, median over repetitions.
std::vector<BenchRecord> run_timing(const Graph& g, const ExperimentSpec& spec);

// Paired bernoulli(p) vs mean-matched poisson((1-p)/p) records.
std::vector<BenchRecord> run_termination_compare(const Graph& g, const ExperimentSpec& spec);

}  // namespace grfpp
