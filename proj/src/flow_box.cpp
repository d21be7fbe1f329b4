#include "wdnlip/flow_box.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "wdnlip/errors.hpp"

namespace wdnlip {

bool FlowBox::contains(std::span<const double> point) const {
  if (point.size() != bounds.size()) return false;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (!(point[i] >= bounds[i].lo && point[i] <= bounds[i].hi)) return false;
  }
  return true;
}

void validate_box(const FlowBox& box, const Network& net) {
  if (box.size() != net.link_count() || box.link_ids.size() != box.size()) {
    throw Error(ErrorKind::MissingLink, "box does not cover every link");
  }
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& b = box.bounds[i];
    if (box.link_ids[i] != net.link_id(i)) throw Error(ErrorKind::UnknownLink, box.link_ids[i]);
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi)) {
      throw Error(ErrorKind::MalformedBounds, "non-finite bound for " + box.link_ids[i]);
    }
    if (b.lo > b.hi) throw Error(ErrorKind::InvertedInterval, box.link_ids[i]);
    if (net.link_kind(i) == LinkKind::Pump && !(b.lo > 0.0)) {
      throw Error(ErrorKind::PumpNonpositiveLower, box.link_ids[i]);
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::MalformedBounds, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

FlowBox parse_bounds(std::string_view text, const Network& net) {
  FlowBox box;
  box.link_ids.resize(net.link_count());
  box.bounds.resize(net.link_count());
  std::vector<bool> seen(net.link_count(), false);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < net.link_count(); ++i) {
    index[net.link_id(i)] = i;
    box.link_ids[i] = net.link_id(i);
  }

  std::size_t line_no = 0;
  bool header = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (!header) {
      if (line != "link_id,q_min,q_max") {
        throw Error(ErrorKind::MalformedBounds, "expected header 'link_id,q_min,q_max'");
      }
      header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw Error(ErrorKind::MalformedBounds, "line " + std::to_string(line_no) + ": expected three fields");
    }
    const std::string id(trim(line.substr(0, c1)));
    const double lo = parse_number(line.substr(c1 + 1, c2 - c1 - 1), line_no);
    const double hi = parse_number(line.substr(c2 + 1), line_no);
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorKind::UnknownLink, id);
    if (seen[it->second]) throw Error(ErrorKind::DuplicateLink, id);
    seen[it->second] = true;
    box.bounds[it->second] = {lo, hi};
  }
  if (!header) throw Error(ErrorKind::MalformedBounds, "empty bounds file");
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw Error(ErrorKind::MissingLink, net.link_id(i));
  }
  validate_box(box, net);
  return box;
}

FlowBox load_bounds(const std::filesystem::path& file, const Network& net) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bounds(ss.str(), net);
}

void write_bounds(std::ostream& out, const FlowBox& box) {
  out << "link_id,q_min,q_max\n";
  char buf[96];
  for (std::size_t i = 0; i < box.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", box.bounds[i].lo, box.bounds[i].hi);
    out << box.link_ids[i] << ',' << buf << '\n';
  }
}

void save_bounds(const std::filesystem::path& file, const FlowBox& box) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + file.string());
  write_bounds(out, box);
}

double pump_max_flow(double shutoff_head, double coeff, double nu, double speed) {
  return speed * std::pow(shutoff_head / coeff, 1.0 / nu);
}

FlowBox default_box(const Network& net, double pump_floor) {
  if (net.pump_count() == 0) throw Error(ErrorKind::NoPumps, "no pump to derive a default flow bound from");
  if (!(pump_floor > 0.0)) throw Error(ErrorKind::InvalidArgument, "pump floor must be positive");
  std::vector<double> pump_max;
  double q = 0.0;
  for (const auto& p : net.pumps()) {
    pump_max.push_back(pump_max_flow(p.shutoff_head, p.coeff, p.exponent, p.speed));
    q = std::max(q, pump_max.back());
  }
  FlowBox box;
  for (std::size_t i = 0; i < net.link_count(); ++i) {
    box.link_ids.push_back(net.link_id(i));
    if (net.link_kind(i) == LinkKind::Pump) {
      const double hi = pump_max[i - net.pipe_count()];
      box.bounds.push_back({std::min(pump_floor, hi), hi});
    } else {
      box.bounds.push_back({-q, q});
    }
  }
  return box;
}

void scale_unit_point(const FlowBox& box, std::span<const double> unit, std::span<double> out) {
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& b = box.bounds[i];
    // degenerate intervals collapse to the single point
    out[i] = b.lo == b.hi ? b.lo : std::min(b.hi, b.lo + unit[i] * (b.hi - b.lo));
  }
}

}  // namespace wdnlip
