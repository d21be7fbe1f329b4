#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wdnlip/errors.hpp"
#include "wdnlip/estimate.hpp"
#include "wdnlip/flow_box.hpp"
#include "wdnlip/interval_lipschitz.hpp"
#include "wdnlip/network.hpp"
#include "wdnlip/sequences.hpp"

namespace wdnlip {

struct ComponentCounts {
  std::size_t junctions = 0, reservoirs = 0, tanks = 0, pipes = 0, pumps = 0, valves = 0;
};

ComponentCounts counts_of(const Network& net);

struct AnalysisOptions {
  bool analytical = true;
  bool interval = false;
  bool point = false;
  std::vector<Mode> modes{Mode::Max, Mode::Sqrt};
  double gap = 1e-6;
  std::size_t max_boxes = 1'000'000;
  std::size_t samples = 100'000;
  SamplerKind sampler = SamplerKind::Sobol;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  /// Receives max-mode BnB progress when set.
  std::function<void(const BnbProgress&)> progress;
};

struct MethodResult {
  LipschitzEstimate estimate;
  double wall_time = 0.0;  // seconds
};

struct AnalysisReport {
  std::string network;
  ComponentCounts counts;
  std::string units;
  std::string bounds_source;  // file path or "default"
  std::vector<MethodResult> results;
  /// One-sided constant from the analytical route.
  std::optional<double> osl;
  AnalysisOptions config;

  const MethodResult* find(Method method, Mode mode) const;
};

/// Runs the selected methods on an already loaded network and box.
AnalysisReport analyze(const std::string& name, const Network& net, const FlowBox& box,
                       const std::string& bounds_source, const AnalysisOptions& options);

/// Parses the file, loads bounds (or derives default_box when `bounds` is
/// empty) and runs analyze.
AnalysisReport analyze_file(const std::filesystem::path& inp, const std::optional<std::filesystem::path>& bounds,
                            const AnalysisOptions& options);

nlohmann::ordered_json to_json(const AnalysisReport& report);
void write_report_table(std::ostream& out, const AnalysisReport& report);
void write_report_csv(std::ostream& out, const AnalysisReport& report);

/// Exit status for the CLI: 2 input or I/O, 3 flow bounds, 4 model
/// assumptions, 1 anything else.
int exit_code_for(ErrorKind kind) noexcept;

struct FixtureEntry {
  std::string name;
  std::filesystem::path inp;
  std::filesystem::path bounds;
  double gap = 1e-6;
};

/// Reads `fixtures.csv` (name,inp,bounds,gap) with paths relative to its directory.
std::vector<FixtureEntry> load_fixture_list(const std::filesystem::path& dir);

struct BenchmarkOptions {
  std::vector<std::string> networks;  // empty: all
  std::optional<double> gap;          // overrides the per-network gap
  std::size_t max_boxes = 1'000'000;
  std::size_t samples = 100'000;
  SamplerKind sampler = SamplerKind::Sobol;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  /// Timing repetitions; the median is reported. 0 skips timing.
  std::size_t repeats = 5;
};

struct BenchmarkRow {
  std::string network;
  ComponentCounts counts;
  double analytical = 0.0;
  double point_max = 0.0;
  double point_sqrt = 0.0;
  double interval_max = 0.0;
  double interval_sqrt = 0.0;
  double gap = 0.0;
  std::string error;  // empty on success

  /// point_max <= analytical <= interval_max <= interval_sqrt and point_sqrt <= interval_sqrt.
  bool ordering_holds() const noexcept;
};

struct TimingRow {
  std::string network;
  std::string method;
  double median_seconds = 0.0;
  std::size_t runs = 0;
};

struct BenchmarkResult {
  std::vector<BenchmarkRow> rows;
  std::vector<TimingRow> timings;
};

BenchmarkResult run_benchmark(const std::filesystem::path& fixture_dir, const BenchmarkOptions& options);
/// Table of constants; no timings, so reruns are byte-identical.
void write_benchmark_csv(std::ostream& out, const BenchmarkResult& result);
void write_timing_csv(std::ostream& out, const BenchmarkResult& result);

struct ConvergenceOptions {
  std::vector<SamplerKind> samplers{SamplerKind::Random, SamplerKind::Halton, SamplerKind::Sobol};
  std::vector<std::size_t> n_grid{10, 100, 1000, 10'000, 100'000};
  Mode mode = Mode::Max;
  std::vector<std::uint64_t> seeds{0};  // one trace per seed for the random sampler
  unsigned threads = 0;
};

struct ConvergenceRow {
  std::size_t n = 0;
  std::string sampler;  // "random" carries the seed as "random:<seed>" when several are run
  Mode mode = Mode::Max;
  double estimate = 0.0;
};

std::vector<ConvergenceRow> run_convergence(const Network& net, const FlowBox& box, const ConvergenceOptions& options);
/// Header `n,sampler,mode,estimate`.
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

/// Decimal text with 17 significant digits.
std::string format_double(double x);

}  // namespace wdnlip
