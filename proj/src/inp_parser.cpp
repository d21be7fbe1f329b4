#include "wdnlip/inp_parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "wdnlip/errors.hpp"

namespace wdnlip {

namespace {

// Conversion of file flow units to cubic feet per second (EPANET 2.2 values).
double flow_to_cfs(FlowUnits units) {
  switch (units) {
    case FlowUnits::CFS: return 1.0;
    case FlowUnits::GPM: return 1.0 / 448.831;
    case FlowUnits::MGD: return 1.0 / 0.64632;
    case FlowUnits::IMGD: return 1.0 / 0.5382;
    case FlowUnits::AFD: return 1.0 / 1.9837;
    case FlowUnits::LPS: return 1.0 / 28.317;
    case FlowUnits::LPM: return 1.0 / 1699.0;
    case FlowUnits::MLD: return 1.0 / 2.4466;
    case FlowUnits::CMH: return 1.0 / 101.94;
    case FlowUnits::CMD: return 1.0 / 2446.6;
  }
  return 1.0;
}

constexpr double kMetersPerFoot = 0.3048;

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

struct Row {
  std::size_t line = 0;
  std::vector<std::string> tokens;
};

[[noreturn]] void malformed(const Row& row, const std::string& what) {
  throw Error(ErrorKind::MalformedSection, "line " + std::to_string(row.line) + ": " + what);
}

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorKind::ParameterOutOfRange, what);
}

double number(const Row& row, std::size_t i, std::string_view field) {
  if (i >= row.tokens.size()) malformed(row, "missing " + std::string(field));
  std::string_view tok = row.tokens[i];
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    malformed(row, "bad " + std::string(field) + " '" + row.tokens[i] + "'");
  }
  return value;
}

void require_fields(const Row& row, std::size_t n, std::string_view section) {
  if (row.tokens.size() < n) {
    malformed(row, std::string(section) + " row needs at least " + std::to_string(n) + " fields");
  }
}

const std::unordered_set<std::string> kSupported = {
    "JUNCTIONS", "RESERVOIRS", "TANKS", "PIPES",  "PUMPS",       "VALVES",
    "CURVES",    "OPTIONS",    "STATUS", "COORDINATES",
};

using SectionRows = std::map<std::string, std::vector<Row>>;

SectionRows split_sections(std::string_view text, std::vector<std::string>& warnings,
                           bool& saw_junctions) {
  SectionRows sections;
  std::string current;
  bool skipping = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (auto semi = line.find(';'); semi != std::string_view::npos) line = line.substr(0, semi);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (line.front() == '[') {
      auto close = line.find(']');
      if (close == std::string_view::npos) {
        throw Error(ErrorKind::MalformedSection,
                    "line " + std::to_string(line_no) + ": unterminated section header");
      }
      current = upper(line.substr(1, close - 1));
      if (current == "END") break;
      skipping = !kSupported.contains(current);
      if (skipping) {
        warnings.push_back("skipped section [" + current + "] at line " + std::to_string(line_no));
      }
      if (current == "JUNCTIONS") saw_junctions = true;
      sections[current];
      continue;
    }
    if (skipping) continue;
    if (current.empty()) {
      throw Error(ErrorKind::MalformedSection,
                  "line " + std::to_string(line_no) + ": data before the first section header");
    }

    Row row;
    row.line = line_no;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) row.tokens.emplace_back(line.substr(start, i - start));
    }
    sections[current].push_back(std::move(row));
    if (eol == text.size()) break;
  }
  return sections;
}

const std::vector<Row>& rows_of(const SectionRows& sections, const std::string& name) {
  static const std::vector<Row> empty;
  auto it = sections.find(name);
  return it == sections.end() ? empty : it->second;
}

}  // namespace

double pipe_resistance(HeadlossFormula formula, FlowUnits units, double length,
                       double diameter, double roughness) {
  if (!(length > 0.0) || !(diameter > 0.0) || !(roughness > 0.0)) {
    out_of_range("pipe length, diameter and roughness must be positive");
  }
  const bool si = is_si(units);
  const double len_ft = si ? length / kMetersPerFoot : length;
  const double d_ft = si ? diameter / 304.8 : diameter / 12.0;
  const double mu = flow_exponent(formula);
  double r_cfs = 0.0;
  switch (formula) {
    case HeadlossFormula::HazenWilliams:
      r_cfs = 4.727 * len_ft / std::pow(roughness, mu) / std::pow(d_ft, 4.871);
      break;
    case HeadlossFormula::DarcyWeisbach: {
      const double e_ft = si ? roughness * 1e-3 / kMetersPerFoot : roughness * 1e-3;
      const double lg = std::log10(e_ft / (3.7 * d_ft));
      const double f = 0.25 / (lg * lg);
      const double area = std::numbers::pi * d_ft * d_ft / 4.0;
      r_cfs = f * len_ft / (2.0 * 32.2 * d_ft * area * area);
      break;
    }
    case HeadlossFormula::ChezyManning: {
      const double a = 4.0 * roughness / (1.49 * std::numbers::pi * d_ft * d_ft);
      r_cfs = a * a * std::pow(d_ft / 4.0, -1.333) * len_ft;
      break;
    }
  }
  const double head_factor = si ? kMetersPerFoot : 1.0;
  return r_cfs * std::pow(flow_to_cfs(units), mu) * head_factor;
}

PumpCurveFit fit_pump_curve(std::span<const std::pair<double, double>> points) {
  if (points.size() == 1) {
    const auto [q1, h1] = points.front();
    if (!(q1 > 0.0) || !(h1 > 0.0)) out_of_range("single-point pump curve needs positive flow and head");
    const double hs = 4.0 / 3.0 * h1;
    return {hs, (hs - h1) / (q1 * q1), 2.0};
  }
  if (points.size() < 3 || points.front().first != 0.0) {
    throw Error(ErrorKind::MalformedSection,
                "pump curve needs one point, or three or more starting at zero flow");
  }
  const double hs = points.front().second;
  if (!(hs > 0.0)) out_of_range("pump shutoff head must be positive");
  const std::size_t n = points.size() - 1;
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs, ys;
  for (std::size_t k = 1; k < points.size(); ++k) {
    const auto [q, h] = points[k];
    if (!(q > 0.0) || !(hs - h > 0.0)) out_of_range("pump curve must have positive flow and head below shutoff");
    xs.push_back(std::log(q));
    ys.push_back(std::log(hs - h));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::MalformedSection, "pump curve flows must be distinct");
  const double nu = sxy / sxx;
  return {hs, std::exp(my - nu * mx), nu};
}

double fit_valve_resistance(std::span<const std::pair<double, double>> points, double mu) {
  double acc = 0.0;
  std::size_t n = 0;
  for (const auto& [q, h] : points) {
    if (q > 0.0 && h > 0.0) {
      acc += std::log(h) - mu * std::log(q);
      ++n;
    }
  }
  if (n == 0) throw Error(ErrorKind::MalformedSection, "valve headloss curve has no positive points");
  return std::exp(acc / static_cast<double>(n));
}

NetworkDescription parse_inp(std::string_view text) {
  NetworkDescription desc;
  bool saw_junctions = false;
  const SectionRows sections = split_sections(text, desc.warnings, saw_junctions);
  if (!saw_junctions) throw Error(ErrorKind::MissingRequiredSection, "[JUNCTIONS]");

  for (const Row& row : rows_of(sections, "OPTIONS")) {
    if (row.tokens.size() < 2) continue;
    const std::string key = upper(row.tokens[0]);
    try {
      if (key == "UNITS") desc.units = parse_flow_units(row.tokens[1]);
      if (key == "HEADLOSS") desc.headloss = parse_headloss_formula(row.tokens[1]);
    } catch (const Error& e) {
      malformed(row, e.detail());
    }
  }
  const double mu = flow_exponent(desc.headloss);

  std::unordered_set<std::string> node_ids;
  auto add_node = [&](const std::string& id) {
    if (!node_ids.insert(id).second) throw Error(ErrorKind::DuplicateId, "node " + id);
  };
  for (const Row& row : rows_of(sections, "JUNCTIONS")) {
    require_fields(row, 2, "[JUNCTIONS]");
    JunctionSpec j{row.tokens[0], number(row, 1, "elevation"), 0.0};
    if (row.tokens.size() > 2) j.base_demand = number(row, 2, "demand");
    add_node(j.id);
    desc.junctions.push_back(std::move(j));
  }
  for (const Row& row : rows_of(sections, "RESERVOIRS")) {
    require_fields(row, 2, "[RESERVOIRS]");
    add_node(row.tokens[0]);
    desc.reservoirs.push_back({row.tokens[0], number(row, 1, "head")});
  }
  for (const Row& row : rows_of(sections, "TANKS")) {
    require_fields(row, 6, "[TANKS]");
    const double diameter = number(row, 5, "diameter");
    if (!(diameter > 0.0)) out_of_range("tank " + row.tokens[0] + " diameter must be positive");
    add_node(row.tokens[0]);
    desc.tanks.push_back({row.tokens[0], number(row, 1, "elevation"), number(row, 2, "initial level"),
                          std::numbers::pi * diameter * diameter / 4.0});
  }

  std::unordered_map<std::string, std::vector<std::pair<double, double>>> curves;
  for (const Row& row : rows_of(sections, "CURVES")) {
    require_fields(row, 3, "[CURVES]");
    curves[row.tokens[0]].emplace_back(number(row, 1, "x"), number(row, 2, "y"));
  }

  std::unordered_set<std::string> link_ids;
  auto add_link = [&](const std::string& id, const std::string& from, const std::string& to) {
    if (!link_ids.insert(id).second) throw Error(ErrorKind::DuplicateId, "link " + id);
    for (const auto* node : {&from, &to}) {
      if (!node_ids.contains(*node)) throw Error(ErrorKind::UnknownNodeRef, *node);
    }
  };

  for (const Row& row : rows_of(sections, "PIPES")) {
    require_fields(row, 6, "[PIPES]");
    const double length = number(row, 3, "length");
    const double diameter = number(row, 4, "diameter");
    const double roughness = number(row, 5, "roughness");
    add_link(row.tokens[0], row.tokens[1], row.tokens[2]);
    double r = 0.0;
    try {
      r = pipe_resistance(desc.headloss, desc.units, length, diameter, roughness);
    } catch (const Error& e) {
      out_of_range("pipe " + row.tokens[0] + ": " + e.detail());
    }
    if (!(r > 0.0) || !std::isfinite(r)) out_of_range("pipe " + row.tokens[0] + " resistance must be positive");
    desc.pipes.push_back({row.tokens[0], row.tokens[1], row.tokens[2], r, mu});
  }

  for (const Row& row : rows_of(sections, "PUMPS")) {
    require_fields(row, 3, "[PUMPS]");
    std::string curve_id;
    double speed = 1.0;
    for (std::size_t i = 3; i < row.tokens.size(); i += 2) {
      const std::string key = upper(row.tokens[i]);
      if (i + 1 >= row.tokens.size()) malformed(row, "pump keyword " + key + " has no value");
      if (key == "HEAD") {
        curve_id = row.tokens[i + 1];
      } else if (key == "SPEED") {
        speed = number(row, i + 1, "speed");
      } else if (key != "PATTERN" && key != "POWER") {
        malformed(row, "unknown pump keyword " + key);
      }
    }
    const std::string& id = row.tokens[0];
    add_link(id, row.tokens[1], row.tokens[2]);
    if (curve_id.empty()) out_of_range("pump " + id + " has no head curve (constant-power pumps are unsupported)");
    auto it = curves.find(curve_id);
    if (it == curves.end()) malformed(row, "pump " + id + " references undefined curve " + curve_id);
    const PumpCurveFit fit = fit_pump_curve(it->second);
    if (!(fit.shutoff_head > 0.0)) out_of_range("pump " + id + " shutoff head must be positive");
    if (!(fit.coeff > 0.0)) out_of_range("pump " + id + " curve coefficient must be positive");
    if (!(fit.exponent >= 1.0 && fit.exponent <= 3.0)) {
      out_of_range("pump " + id + " curve exponent " + std::to_string(fit.exponent) + " outside [1,3]");
    }
    if (!(speed > 0.0 && speed <= 1.0)) out_of_range("pump " + id + " speed outside (0,1]");
    desc.pumps.push_back({id, row.tokens[1], row.tokens[2], fit.shutoff_head, fit.coeff, fit.exponent, speed});
  }

  for (const Row& row : rows_of(sections, "VALVES")) {
    require_fields(row, 6, "[VALVES]");
    const std::string& id = row.tokens[0];
    add_link(id, row.tokens[1], row.tokens[2]);
    const std::string type = upper(row.tokens[4]);
    if (type != "GPV") out_of_range("valve " + id + " has unsupported type " + type);
    auto it = curves.find(row.tokens[5]);
    if (it == curves.end()) malformed(row, "valve " + id + " references undefined curve " + row.tokens[5]);
    const double r = fit_valve_resistance(it->second, mu);
    if (!(r > 0.0) || !std::isfinite(r)) out_of_range("valve " + id + " resistance must be positive");
    desc.valves.push_back({id, row.tokens[1], row.tokens[2], r, 1.0});
  }

  for (const Row& row : rows_of(sections, "STATUS")) {
    require_fields(row, 2, "[STATUS]");
    if (!link_ids.contains(row.tokens[0])) malformed(row, "status for undeclared link " + row.tokens[0]);
    auto valve = std::find_if(desc.valves.begin(), desc.valves.end(),
                              [&](const ValveSpec& v) { return v.id == row.tokens[0]; });
    if (valve == desc.valves.end()) continue;
    const std::string value = upper(row.tokens[1]);
    if (value == "OPEN") {
      valve->openness = 1.0;
    } else if (value == "CLOSED") {
      out_of_range("valve " + valve->id + " is closed; openness must lie in (0,1]");
    } else {
      valve->openness = number(row, 1, "openness");
    }
    if (!(valve->openness > 0.0 && valve->openness <= 1.0)) {
      out_of_range("valve " + valve->id + " openness outside (0,1]");
    }
  }

  for (const Row& row : rows_of(sections, "COORDINATES")) {
    require_fields(row, 3, "[COORDINATES]");
    desc.coordinates.push_back({row.tokens[0], number(row, 1, "x"), number(row, 2, "y")});
  }
  return desc;
}

NetworkDescription parse_inp_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_inp(buf.str());
}

}  // namespace wdnlip
