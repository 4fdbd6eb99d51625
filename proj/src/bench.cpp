#include "grfpp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "grfpp/stitch.hpp"
#include "grfpp/walks.hpp"

namespace grfpp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
}

double std_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1.0));
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n == 0 ? 0.0 : (n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]));
}

struct CellResult {
    std::vector<double> errors, walk_times, stitch_times, nnzs;
};

// One timed estimate appended to `res`.
void run_rep(const Graph& g, const ExperimentSpec& spec, const PairMask& mask,
             const DenseMatrix& k_exact, int degree, int m, const TerminationStrategy& term,
             const ModulationFunction& f, std::uint64_t cell_tag, int rep, CellResult& res) {
    WalkConfig cfg;
    cfg.num_walks = m;
    cfg.modulation = f;
    cfg.termination = term;
    cfg.seed = mix_seed(spec.seed, cell_tag, static_cast<std::uint64_t>(rep));
    cfg.num_threads = spec.num_threads;

    auto t0 = Clock::now();
    auto pairs = build_feature_pairs(g, cfg, degree, spec.reuse_walks);
    res.walk_times.push_back(seconds_since(t0));

    double nnz = 0.0;
    for (const auto& p : pairs) nnz += p.k1->mat.nnz() + p.k2->mat.nnz();
    res.nnzs.push_back(nnz / (2.0 * degree));

    t0 = Clock::now();
    auto est = make_estimator(std::move(pairs), StitchMode::op);
    DenseMatrix k_hat = materialize(est);
    res.stitch_times.push_back(seconds_since(t0));

    res.errors.push_back(masked_error(k_exact, k_hat, mask));
}

// One (degree, m, termination) cell: spec.repetitions independent estimates.
CellResult run_cell(const Graph& g, const ExperimentSpec& spec, const PairMask& mask,
                    const DenseMatrix& k_exact, int degree, int m,
                    const TerminationStrategy& term, std::uint64_t cell_tag) {
    CellResult res;
    const ModulationFunction f = root_modulation(spec.alpha, degree);
    for (int rep = 0; rep < spec.repetitions; ++rep)
        run_rep(g, spec, mask, k_exact, degree, m, term, f, cell_tag, rep, res);
    return res;
}

BenchRecord make_record(const ExperimentSpec& spec, int degree, int m,
                        const std::string& term_label, const CellResult& cell,
                        bool median_times = false) {
    BenchRecord r;
    r.graph = spec.graph_label;
    r.kernel = spec.alpha.label;
    r.degree = degree;
    r.num_walks = m;
    r.termination = term_label;
    r.reuse_walks = spec.reuse_walks;
    r.repetitions = spec.repetitions;
    r.seed = spec.seed;
    r.mask_min_hops = spec.mask_min_hops;
    r.error_mean = mean_of(cell.errors);
    r.error_std = std_of(cell.errors);
    r.walk_time_s = median_times ? median_of(cell.walk_times) : mean_of(cell.walk_times);
    r.stitch_time_s = median_times ? median_of(cell.stitch_times) : mean_of(cell.stitch_times);
    r.factor_nnz_mean = mean_of(cell.nnzs);
    return r;
}

PairMask make_mask(const Graph& g, const ExperimentSpec& spec) {
    if (spec.mask_min_hops <= 0.0) return mask_all();
    return mask_min_hops(shortest_path_distances(g), spec.mask_min_hops);
}

}  // namespace

std::string BenchRecord::csv_header() {
    return "graph,kernel,degree,num_walks,termination,reuse_walks,repetitions,seed,"
           "mask_min_hops,error_mean,error_std,walk_time_s,stitch_time_s,factor_nnz_mean";
}

std::string BenchRecord::csv_row() const {
    std::ostringstream s;
    s.precision(12);
    s << graph << ',' << kernel << ',' << degree << ',' << num_walks << ',' << termination
      << ',' << (reuse_walks ? 1 : 0) << ',' << repetitions << ',' << seed << ','
      << mask_min_hops << ',' << error_mean << ',' << error_std << ',' << walk_time_s << ','
      << stitch_time_s << ',' << factor_nnz_mean;
    return s.str();
}

std::string BenchRecord::json_line() const {
    nlohmann::json j;
    j["graph"] = graph;
    j["kernel"] = kernel;
    j["degree"] = degree;
    j["num_walks"] = num_walks;
    j["termination"] = termination;
    j["reuse_walks"] = reuse_walks;
    j["repetitions"] = repetitions;
    j["seed"] = seed;
    j["mask_min_hops"] = mask_min_hops;
    j["error_mean"] = error_mean;
    j["error_std"] = error_std;
    j["walk_time_s"] = walk_time_s;
    j["stitch_time_s"] = stitch_time_s;
    j["factor_nnz_mean"] = factor_nnz_mean;
    return j.dump();
}

void write_records(std::ostream& out, const std::vector<BenchRecord>& records, bool as_json) {
    if (!as_json) out << BenchRecord::csv_header() << '\n';
    for (const auto& r : records) out << (as_json ? r.json_line() : r.csv_row()) << '\n';
}

std::vector<BenchRecord> run_error_sweep(const Graph& g, const ExperimentSpec& spec) {
    const ExactKernel oracle = exact_kernel(g, spec.alpha);
    const PairMask mask = make_mask(g, spec);
    std::vector<BenchRecord> records;
    std::uint64_t cell_tag = 0;
    for (int degree : spec.degrees)
        for (int m : spec.walk_counts)
            for (const auto& term_spec : spec.terminations) {
                const auto term = TerminationStrategy::parse(term_spec);
                auto cell =
                    run_cell(g, spec, mask, oracle.matrix, degree, m, term, ++cell_tag);
                records.push_back(make_record(spec, degree, m, term.label(), cell));
            }
    return records;
}

std::vector<BenchRecord> run_timing(const Graph& g, const ExperimentSpec& spec) {
    const ExactKernel oracle = exact_kernel(g, spec.alpha);
    const int m = spec.walk_counts.front();
    const int nd = static_cast<int>(spec.degrees.size());

    std::vector<TerminationStrategy> terms;
    std::vector<ModulationFunction> mods;
    for (int degree : spec.degrees) {
        terms.push_back(TerminationStrategy::bernoulli(spec.timing_p_base * degree));
        mods.push_back(root_modulation(spec.alpha, degree));
    }

    // Repetitions are interleaved across degrees so machine-load drift affects
    // every degree equally; rep -1 is the discarded warm-up pass.
    std::vector<CellResult> cells(nd);
    for (int rep = -1; rep < spec.repetitions; ++rep)
        for (int di = 0; di < nd; ++di) {
            CellResult scratch;
            auto& sink = rep < 0 ? scratch : cells[di];
            run_rep(g, spec, mask_all(), oracle.matrix, spec.degrees[di], m, terms[di],
                    mods[di], 0x7100 + di, std::max(rep, 0), sink);
        }

    std::vector<BenchRecord> records;
    for (int di = 0; di < nd; ++di)
        records.push_back(make_record(spec, spec.degrees[di], m, terms[di].label(), cells[di],
                                      /*median=*/true));
    return records;
}

std::vector<BenchRecord> run_termination_compare(const Graph& g, const ExperimentSpec& spec) {
    const ExactKernel oracle = exact_kernel(g, spec.alpha);
    const PairMask mask = make_mask(g, spec);
    std::vector<BenchRecord> records;
    std::uint64_t cell_tag = 0x7c00;
    for (const auto& term_spec : spec.terminations) {
        const auto bern = TerminationStrategy::parse(term_spec);
        // Mean-matched pairing; the bernoulli mean (1-p)/p fixes the poisson rate.
        const auto pois = TerminationStrategy::poisson(bern.mean_length());
        for (int degree : spec.degrees)
            for (int m : spec.walk_counts)
                for (const auto& term : {bern, pois}) {
                    auto cell =
                        run_cell(g, spec, mask, oracle.matrix, degree, m, term, ++cell_tag);
                    records.push_back(make_record(spec, degree, m, term.label(), cell));
                }
    }
    return records;
}

}  // namespace grfpp
