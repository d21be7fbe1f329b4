#include "wdnlip/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wdnlip/analytical.hpp"
#include "wdnlip/inp_parser.hpp"
#include "wdnlip/point_lipschitz.hpp"

namespace wdnlip {

using Json = nlohmann::ordered_json;

namespace {

template <class F>
auto timed(F&& f, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  auto out = f();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Json counts_json(const ComponentCounts& c) {
  return {{"junctions", c.junctions}, {"reservoirs", c.reservoirs}, {"tanks", c.tanks},
          {"pipes", c.pipes},         {"pumps", c.pumps},           {"valves", c.valves}};
}

std::string method_label(const LipschitzEstimate& e) {
  if (e.method == Method::Analytical) return "analytical";
  return std::string(e.method == Method::IntervalUpper ? "interval" : "point") + "-" + std::string(to_string(e.mode));
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ComponentCounts counts_of(const Network& net) {
  return {net.junction_count(), net.reservoir_count(), net.tank_count(),
          net.pipe_count(),     net.pump_count(),      net.valve_count()};
}

const MethodResult* AnalysisReport::find(Method method, Mode mode) const {
  for (const auto& r : results) {
    if (r.estimate.method == method && (method == Method::Analytical || r.estimate.mode == mode)) return &r;
  }
  return nullptr;
}

AnalysisReport analyze(const std::string& name, const Network& net, const FlowBox& box,
                       const std::string& bounds_source, const AnalysisOptions& options) {
  AnalysisReport rep;
  rep.network = name;
  rep.counts = counts_of(net);
  rep.units = std::string(to_string(net.units()));
  rep.bounds_source = bounds_source;
  rep.config = options;
  rep.config.progress = nullptr;

  if (options.analytical) {
    MethodResult r;
    r.estimate = timed([&] { return k_network(net, box); }, r.wall_time);
    rep.osl = osl_network(net, box).value;
    rep.results.push_back(r);
  }
  if (options.interval) {
    for (Mode mode : options.modes) {
      IntervalOptions io;
      io.gap_tol = options.gap;
      io.max_boxes = options.max_boxes;
      if (mode == Mode::Max) io.progress = options.progress;
      MethodResult r;
      r.estimate = timed([&] { return mode == Mode::Max ? k_upper_max(net, box, io) : k_upper_sqrt(net, box, io); },
                         r.wall_time);
      rep.results.push_back(r);
    }
  }
  if (options.point) {
    for (Mode mode : options.modes) {
      SamplingOptions so;
      so.sampler = options.sampler;
      so.seed = options.seed;
      so.mode = mode;
      so.threads = options.threads;
      MethodResult r;
      r.estimate = timed([&] { return k_lower(net, box, options.samples, so); }, r.wall_time);
      rep.results.push_back(r);
    }
  }
  return rep;
}

AnalysisReport analyze_file(const std::filesystem::path& inp, const std::optional<std::filesystem::path>& bounds,
                            const AnalysisOptions& options) {
  const Network net = build_network(parse_inp_file(inp));
  const FlowBox box = bounds ? load_bounds(*bounds, net) : default_box(net);
  return analyze(inp.stem().string(), net, box, bounds ? bounds->string() : "default", options);
}

Json to_json(const AnalysisReport& report) {
  Json doc;
  doc["network"] = report.network;
  doc["counts"] = counts_json(report.counts);
  doc["units"] = report.units;
  doc["bounds"] = report.bounds_source;
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json e = to_json(r.estimate);
    e["wall_time"] = r.wall_time;
    results.push_back(std::move(e));
  }
  doc["estimates"] = std::move(results);
  doc["osl"] = report.osl ? Json(*report.osl) : Json(nullptr);
  Json methods = Json::array();
  if (report.config.analytical) methods.push_back("analytical");
  if (report.config.interval) methods.push_back("interval");
  if (report.config.point) methods.push_back("point");
  Json modes = Json::array();
  for (Mode m : report.config.modes) modes.push_back(std::string(to_string(m)));
  doc["config"] = {{"methods", methods},
                   {"modes", modes},
                   {"gap", report.config.gap},
                   {"max_boxes", report.config.max_boxes},
                   {"samples", report.config.samples},
                   {"sampler", std::string(to_string(report.config.sampler))},
                   {"seed", report.config.seed},
                   {"threads", report.config.threads}};
  return doc;
}

void write_report_table(std::ostream& out, const AnalysisReport& report) {
  const auto& c = report.counts;
  char buf[256];
  out << "network  " << report.network << " (" << report.units << ")\n";
  std::snprintf(buf, sizeof buf, "counts   {%zu,%zu,%zu,%zu,%zu,%zu}  junctions,reservoirs,tanks,pipes,pumps,valves\n",
                c.junctions, c.reservoirs, c.tanks, c.pipes, c.pumps, c.valves);
  out << buf;
  out << "bounds   " << report.bounds_source << "\n\n";
  std::snprintf(buf, sizeof buf, "%-14s %-14s %-14s %-12s %-10s\n", "method", "value", "lower", "effort", "time[s]");
  out << buf;
  for (const auto& r : report.results) {
    const auto& e = r.estimate;
    const std::string lower = e.lower ? format_double(*e.lower).substr(0, 12) : "-";
    std::snprintf(buf, sizeof buf, "%-14s %-14.8g %-14s %-12zu %-10.4f\n", method_label(e).c_str(), e.value,
                  lower.c_str(), e.effort, r.wall_time);
    out << buf;
    if (e.per_class) {
      std::snprintf(buf, sizeof buf, "  K^P %.8g  K^M %.8g  K^V %.8g\n", e.per_class->pipes, e.per_class->pumps,
                    e.per_class->valves);
      out << buf;
    }
  }
  if (report.osl) out << "\none-sided constant L = " << format_double(*report.osl) << "\n";
}

void write_report_csv(std::ostream& out, const AnalysisReport& report) {
  out << "network,method,mode,value,lower,gap,effort,wall_time\n";
  for (const auto& r : report.results) {
    const auto& e = r.estimate;
    out << report.network << ',' << to_string(e.method) << ',' << to_string(e.mode) << ',' << format_double(e.value)
        << ',' << (e.lower ? format_double(*e.lower) : "") << ',' << (e.gap ? format_double(*e.gap) : "") << ','
        << e.effort << ',' << format_double(r.wall_time) << '\n';
  }
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedSection:
    case ErrorKind::UnknownNodeRef:
    case ErrorKind::DuplicateId:
    case ErrorKind::MissingRequiredSection:
    case ErrorKind::Io: return 2;
    case ErrorKind::MissingLink:
    case ErrorKind::DuplicateLink:
    case ErrorKind::UnknownLink:
    case ErrorKind::InvertedInterval:
    case ErrorKind::PumpNonpositiveLower:
    case ErrorKind::MalformedBounds:
    case ErrorKind::NoPumps: return 3;
    case ErrorKind::ParameterOutOfRange:
    case ErrorKind::NonPositiveFlow: return 4;
    case ErrorKind::DimensionTooLarge:
    case ErrorKind::InvalidArgument: return 1;
  }
  return 1;
}

std::vector<FixtureEntry> load_fixture_list(const std::filesystem::path& dir) {
  const auto file = dir / "fixtures.csv";
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  std::vector<FixtureEntry> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 4) throw Error(ErrorKind::MalformedBounds, "fixtures.csv: expected 4 fields in '" + line + "'");
    FixtureEntry e;
    e.name = f[0];
    e.inp = dir / f[1];
    e.bounds = dir / f[2];
    try {
      e.gap = std::stod(f[3]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedBounds, "fixtures.csv: bad gap '" + f[3] + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

bool BenchmarkRow::ordering_holds() const noexcept {
  return error.empty() && point_max <= analytical && analytical <= interval_max && interval_max <= interval_sqrt &&
         point_sqrt <= interval_sqrt;
}

BenchmarkResult run_benchmark(const std::filesystem::path& fixture_dir, const BenchmarkOptions& options) {
  BenchmarkResult result;
  for (const auto& fx : load_fixture_list(fixture_dir)) {
    if (!options.networks.empty() &&
        std::find(options.networks.begin(), options.networks.end(), fx.name) == options.networks.end()) {
      continue;
    }
    BenchmarkRow row;
    row.network = fx.name;
    row.gap = options.gap.value_or(fx.gap);
    try {
      const Network net = build_network(parse_inp_file(fx.inp));
      const FlowBox box = load_bounds(fx.bounds, net);
      row.counts = counts_of(net);

      IntervalOptions io;
      io.gap_tol = row.gap;
      io.max_boxes = options.max_boxes;
      SamplingOptions so;
      so.sampler = options.sampler;
      so.seed = options.seed;
      so.threads = options.threads;

      // Each method runs `repeats` times (at least once); values come from the first run.
      auto measure = [&](const std::string& method, auto&& run) {
        std::vector<double> times;
        const std::size_t runs = std::max<std::size_t>(1, options.repeats);
        double value = 0.0;
        for (std::size_t i = 0; i < runs; ++i) {
          double t = 0.0;
          const LipschitzEstimate est = timed(run, t);
          if (i == 0) value = est.value;
          times.push_back(t);
        }
        if (options.repeats > 0) result.timings.push_back({fx.name, method, median(times), runs});
        return value;
      };

      row.analytical = measure("analytical", [&] { return k_network(net, box); });
      so.mode = Mode::Max;
      row.point_max = measure("point-max", [&] { return k_lower(net, box, options.samples, so); });
      so.mode = Mode::Sqrt;
      row.point_sqrt = measure("point-sqrt", [&] { return k_lower(net, box, options.samples, so); });
      row.interval_max = measure("interval-max", [&] { return k_upper_max(net, box, io); });
      row.interval_sqrt = measure("interval-sqrt", [&] { return k_upper_sqrt(net, box, io); });
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_benchmark_csv(std::ostream& out, const BenchmarkResult& result) {
  out << "network,junctions,reservoirs,tanks,pipes,pumps,valves,analytical,point_max,point_sqrt,"
         "interval_max,interval_sqrt,gap,ordering,error\n";
  for (const auto& r : result.rows) {
    const auto& c = r.counts;
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << r.network << ',' << c.junctions << ',' << c.reservoirs << ',' << c.tanks << ',' << c.pipes << ','
        << c.pumps << ',' << c.valves << ',' << format_double(r.analytical) << ',' << format_double(r.point_max)
        << ',' << format_double(r.point_sqrt) << ',' << format_double(r.interval_max) << ','
        << format_double(r.interval_sqrt) << ',' << format_double(r.gap) << ','
        << (r.ordering_holds() ? "ok" : "violated") << ',' << err << '\n';
  }
}

void write_timing_csv(std::ostream& out, const BenchmarkResult& result) {
  out << "network,method,median_seconds,runs\n";
  for (const auto& t : result.timings) {
    out << t.network << ',' << t.method << ',' << format_double(t.median_seconds) << ',' << t.runs << '\n';
  }
}

std::vector<ConvergenceRow> run_convergence(const Network& net, const FlowBox& box, const ConvergenceOptions& options) {
  std::vector<std::size_t> grid = options.n_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty() || grid.front() == 0) throw Error(ErrorKind::InvalidArgument, "sample counts must be positive");

  std::vector<ConvergenceRow> rows;
  for (SamplerKind kind : options.samplers) {
    const bool seeded = kind == SamplerKind::Random;
    const std::vector<std::uint64_t> seeds = seeded ? options.seeds : std::vector<std::uint64_t>{0};
    for (std::uint64_t seed : seeds) {
      SamplingOptions so;
      so.sampler = kind;
      so.seed = seed;
      so.mode = options.mode;
      so.threads = options.threads;
      std::string label(to_string(kind));
      if (seeded && seeds.size() > 1) label += ":" + std::to_string(seed);
      for (const auto& [n, value] : k_lower_trace(net, box, grid, so)) rows.push_back({n, label, options.mode, value});
    }
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "n,sampler,mode,estimate\n";
  for (const auto& r : rows) out << r.n << ',' << r.sampler << ',' << to_string(r.mode) << ',' << format_double(r.estimate) << '\n';
}

}  // namespace wdnlip
