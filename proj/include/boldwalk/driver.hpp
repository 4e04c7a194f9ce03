// Orchestration shared by the command-line tool and the verification suites:
// configured simulation runs (either engine, optional threading), checkpoint
// descriptors, replay-from-header, and ensemble analysis of stored runs.

#ifndef BOLDWALK_DRIVER_HPP
#define BOLDWALK_DRIVER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "boldwalk/io.hpp"
#include "boldwalk/stats.hpp"

namespace boldwalk::driver {

struct SimulateConfig {
    std::string engine = "direct"; // "direct" | "cycles"
    double gamma = 0.0;
    std::int64_t t_max = 0; // direct always; cycles: either this or k_max
    std::int64_t k_max = 0;
    std::int64_t n_walkers = 1;
    std::uint64_t seed = 1;
    std::string checkpoints; // descriptor, direct only; empty = default grid
    std::string format = "jsonl";
    int threads = 1;
};

// Checkpoint descriptors: "geometric:RATIO[:START]" (default
// "geometric:1.7782794100389228:100", i.e. quarter-decade spacing from 100;
// t_max is always appended) or "list:t1,t2,...". Throws on malformed input.
std::vector<std::int64_t> resolve_checkpoints(const std::string& descriptor,
                                              std::int64_t t_max);

// Run the configured simulation. The header embedded in the result is
// sufficient to reproduce the row section byte for byte.
io::RunData run_simulate(const SimulateConfig& config);

// Re-execute the run described by a stored header.
io::RunData replay(const io::RunHeader& header, int threads = 1);

struct AnalyzeConfig {
    std::vector<double> lambdas = {0.5, 1.0, 2.0};
    std::vector<double> qs = {1.0, 1.5, 2.0};
    std::vector<std::int64_t> at_times; // empty: derive from the input
    int bootstrap_resamples = 200;
    std::string format = "jsonl"; // "jsonl" | "csv"
};

struct AnalyzeResult {
    double gamma;
    double nu;
    std::vector<stats::EnsembleSummary> summaries;
    std::optional<stats::NuEstimate> nu_fit; // when >= 4 checkpoint times
    std::optional<double> ks_final;          // vs Levy cdf, gamma in (0, 1/2]
    std::optional<double> ks_critical;       // 1% critical value for ks_final
};

// Summarize an ensemble run at the requested times. Direct runs must contain
// every requested time as a checkpoint; cycle runs are reconstructed, and
// times beyond a walker's horizon are rejected.
AnalyzeResult analyze_run(const io::RunData& run, const AnalyzeConfig& config);

// Serialize the analysis (records or long-format csv per config.format) and
// write the plot-ready side tables next to `out_path`:
//   <out>.scaling.dat           log10 t vs log10 median/mean z
//   <out>.laplace.dat           empirical vs reference transform, final time
//   <out>.ecdf.dat              reference-variable ECDF, gamma in (0, 1/2]
void write_analysis(const AnalyzeResult& result, const AnalyzeConfig& config,
                    const std::string& out_path);
void write_analysis_records(std::ostream& os, const AnalyzeResult& result,
                            const AnalyzeConfig& config);

} // namespace boldwalk::driver

#endif // BOLDWALK_DRIVER_HPP
