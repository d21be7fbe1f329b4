// wdnlip: Lipschitz constants of water distribution network hydraulics.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wdnlip/dae.hpp"
#include "wdnlip/inp_parser.hpp"
#include "wdnlip/report.hpp"

using namespace wdnlip;

namespace {

struct BoundsArgs {
  std::string file;
  bool use_default = false;
};

void add_bounds_options(CLI::App* cmd, BoundsArgs& b) {
  auto* bf = cmd->add_option("--bounds", b.file, "flow bounds CSV (link_id,q_min,q_max)");
  cmd->add_flag("--default-bounds", b.use_default, "derive bounds from pump maximum flows")->excludes(bf);
}

// Explicit file, then <stem>_bounds.csv beside the network, then the
// pump-derived default when asked for.
FlowBox resolve_bounds(const std::filesystem::path& inp, const Network& net, const BoundsArgs& b, std::string& source) {
  if (!b.file.empty()) {
    source = b.file;
    return load_bounds(b.file, net);
  }
  if (b.use_default) {
    source = "default";
    return default_box(net);
  }
  const auto sibling = inp.parent_path() / (inp.stem().string() + "_bounds.csv");
  if (std::filesystem::exists(sibling)) {
    source = sibling.string();
    return load_bounds(sibling, net);
  }
  throw Error(ErrorKind::MissingLink, "no bounds file for " + inp.string() + "; pass --bounds or --default-bounds");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz and one-sided Lipschitz constants of water network hydraulics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "wdnlip 1.0.0");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "compute constants for one network");
  std::string inp;
  BoundsArgs bounds;
  std::string methods = "analytical";
  std::string mode;
  double gap = 1e-6;
  std::size_t max_boxes = 1'000'000;
  std::size_t samples = 100'000;
  std::string sampler = "sobol";
  std::uint64_t seed = 0;
  std::string format = "table";
  unsigned threads = 0;
  std::string progress_file, report_file;
  analyze_cmd->add_option("inp", inp, "EPANET INP file")->required();
  add_bounds_options(analyze_cmd, bounds);
  analyze_cmd->add_option("--methods", methods, "comma list of analytical, interval, point")->capture_default_str();
  analyze_cmd->add_option("--mode", mode, "max or sqrt (default: both)")->check(CLI::IsMember({"max", "sqrt"}));
  analyze_cmd->add_option("--gap", gap, "BnB optimality gap")->capture_default_str();
  analyze_cmd->add_option("--max-boxes", max_boxes, "BnB box budget")->capture_default_str();
  analyze_cmd->add_option("--samples", samples, "sampling points")->capture_default_str();
  analyze_cmd->add_option("--sampler", sampler, "random, halton or sobol")
      ->check(CLI::IsMember({"random", "halton", "sobol"}))
      ->capture_default_str();
  analyze_cmd->add_option("--seed", seed, "seed for the random sampler")->capture_default_str();
  analyze_cmd->add_option("--format", format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  analyze_cmd->add_option("--threads", threads, "sampling threads (0: all cores)")->capture_default_str();
  analyze_cmd->add_option("--progress", progress_file, "write BnB progress as JSON lines");
  analyze_cmd->add_option("--report", report_file, "also write the JSON report to this file");

  // benchmark
  auto* bench_cmd = app.add_subcommand("benchmark", "run every fixture and tabulate the constants");
  std::string fixture_dir = std::string(WDNLIP_DATA_DIR) + "/networks";
  std::string networks, table_out, timing_out;
  std::optional<double> bench_gap;
  std::size_t repeats = 5;
  bench_cmd->add_option("fixture_dir", fixture_dir, "directory holding fixtures.csv")->capture_default_str();
  bench_cmd->add_option("--networks", networks, "comma list of fixture names (default: all)");
  bench_cmd->add_option("--gap", bench_gap, "override the per-network BnB gap");
  bench_cmd->add_option("--max-boxes", max_boxes, "BnB box budget")->capture_default_str();
  bench_cmd->add_option("--samples", samples, "sampling points")->capture_default_str();
  bench_cmd->add_option("--sampler", sampler, "random, halton or sobol")
      ->check(CLI::IsMember({"random", "halton", "sobol"}))
      ->capture_default_str();
  bench_cmd->add_option("--seed", seed, "seed for the random sampler")->capture_default_str();
  bench_cmd->add_option("--threads", threads, "sampling threads (0: all cores)")->capture_default_str();
  bench_cmd->add_option("--repeats", repeats, "timing repetitions, median reported (0: no timing)")
      ->capture_default_str();
  bench_cmd->add_option("--out", table_out, "constants CSV (default: stdout)");
  bench_cmd->add_option("--timing", timing_out, "timing CSV");

  // convergence
  auto* conv_cmd = app.add_subcommand("convergence", "sampling estimate against the number of points");
  std::string samplers = "random,halton,sobol", n_grid = "10,100,1000,10000,100000", seeds = "0";
  std::string conv_mode = "max", conv_out;
  conv_cmd->add_option("inp", inp, "EPANET INP file")->required();
  add_bounds_options(conv_cmd, bounds);
  conv_cmd->add_option("--samplers", samplers, "comma list of samplers")->capture_default_str();
  conv_cmd->add_option("--n-grid", n_grid, "comma list of sample counts")->capture_default_str();
  conv_cmd->add_option("--mode", conv_mode, "max or sqrt")->check(CLI::IsMember({"max", "sqrt"}))->capture_default_str();
  conv_cmd->add_option("--seeds", seeds, "comma list of random-sampler seeds")->capture_default_str();
  conv_cmd->add_option("--threads", threads, "sampling threads (0: all cores)")->capture_default_str();
  conv_cmd->add_option("--out", conv_out, "CSV output (default: stdout)");

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "print the parsed network as JSON");
  parse_cmd->add_option("inp", inp, "EPANET INP file")->required();

  // export-dae
  auto* dae_cmd = app.add_subcommand("export-dae", "write the DAE matrices in MatrixMarket form");
  std::string dae_dir;
  double dt = 1.0;
  bool continuous = false;
  dae_cmd->add_option("inp", inp, "EPANET INP file")->required();
  dae_cmd->add_option("--out", dae_dir, "output directory")->required();
  auto* dt_opt = dae_cmd->add_option("--dt", dt, "time step of the discrete model")->capture_default_str();
  dae_cmd->add_flag("--continuous", continuous, "continuous-time model")->excludes(dt_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) {
      AnalysisOptions opt;
      opt.analytical = opt.interval = opt.point = false;
      for (const auto& m : split_list(methods)) {
        if (m == "analytical") opt.analytical = true;
        else if (m == "interval") opt.interval = true;
        else if (m == "point") opt.point = true;
        else throw Error(ErrorKind::InvalidArgument, "unknown method '" + m + "'");
      }
      if (!mode.empty()) opt.modes = {parse_mode(mode)};
      opt.gap = gap;
      opt.max_boxes = max_boxes;
      opt.samples = samples;
      opt.sampler = parse_sampler(sampler);
      opt.seed = seed;
      opt.threads = threads;
      std::ofstream progress;
      if (!progress_file.empty()) {
        progress.open(progress_file, std::ios::binary);
        if (!progress) throw Error(ErrorKind::Io, "cannot write " + progress_file);
        opt.progress = [&progress](const BnbProgress& p) { write_progress_line(progress, p); };
      }

      const std::filesystem::path path(inp);
      const Network net = build_network(parse_inp_file(path));
      std::string source;
      const FlowBox box = resolve_bounds(path, net, bounds, source);
      const AnalysisReport rep = analyze(path.stem().string(), net, box, source, opt);

      if (!report_file.empty()) with_output(report_file, [&](std::ostream& o) { o << to_json(rep).dump(2) << '\n'; });
      if (format == "json") std::cout << to_json(rep).dump(2) << '\n';
      else if (format == "csv") write_report_csv(std::cout, rep);
      else write_report_table(std::cout, rep);
    } else if (bench_cmd->parsed()) {
      BenchmarkOptions opt;
      opt.networks = split_list(networks);
      opt.gap = bench_gap;
      opt.max_boxes = max_boxes;
      opt.samples = samples;
      opt.sampler = parse_sampler(sampler);
      opt.seed = seed;
      opt.threads = threads;
      opt.repeats = repeats;
      const BenchmarkResult res = run_benchmark(fixture_dir, opt);
      with_output(table_out, [&](std::ostream& o) { write_benchmark_csv(o, res); });
      if (!timing_out.empty()) with_output(timing_out, [&](std::ostream& o) { write_timing_csv(o, res); });
      for (const auto& row : res.rows) {
        if (!row.error.empty()) std::cerr << row.network << ": " << row.error << '\n';
      }
    } else if (conv_cmd->parsed()) {
      ConvergenceOptions opt;
      opt.samplers.clear();
      for (const auto& s : split_list(samplers)) opt.samplers.push_back(parse_sampler(s));
      opt.n_grid.clear();
      for (const auto& n : split_list(n_grid)) opt.n_grid.push_back(std::stoull(n));
      opt.seeds.clear();
      for (const auto& s : split_list(seeds)) opt.seeds.push_back(std::stoull(s));
      if (opt.seeds.empty()) opt.seeds.push_back(0);
      opt.mode = parse_mode(conv_mode);
      opt.threads = threads;
      const std::filesystem::path path(inp);
      const Network net = build_network(parse_inp_file(path));
      std::string source;
      const FlowBox box = resolve_bounds(path, net, bounds, source);
      const auto rows = run_convergence(net, box, opt);
      with_output(conv_out, [&](std::ostream& o) { write_convergence_csv(o, rows); });
    } else if (parse_cmd->parsed()) {
      std::cout << to_json(parse_inp_file(inp)).dump(2) << '\n';
    } else if (dae_cmd->parsed()) {
      const Network net = build_network(parse_inp_file(inp));
      const DaeSystem dae = build_dae(net, continuous ? TimeMode::continuous() : TimeMode::discrete_step(dt));
      export_dae(dae, net, dae_dir);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number in a list option: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
