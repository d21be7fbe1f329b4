#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wdnlip/network.hpp"

namespace wdnlip {

struct FlowInterval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
  bool operator==(const FlowInterval&) const = default;
};

/// Per-link flow intervals in link order (pipes, pumps, valves). The
/// domain is their Cartesian product, hence convex.
struct FlowBox {
  std::vector<std::string> link_ids;
  std::vector<FlowInterval> bounds;

  std::size_t size() const noexcept { return bounds.size(); }
  bool contains(std::span<const double> point) const;
  bool operator==(const FlowBox&) const = default;
};

inline constexpr double kDefaultPumpFloor = 1e-6;

/// Checks ordering, finiteness and pump positivity against `net`.
void validate_box(const FlowBox& box, const Network& net);

/// CSV with header `link_id,q_min,q_max`, one row per link in any order.
/// Throws MissingLink, DuplicateLink, UnknownLink, InvertedInterval,
/// PumpNonpositiveLower or MalformedBounds.
FlowBox parse_bounds(std::string_view text, const Network& net);
FlowBox load_bounds(const std::filesystem::path& file, const Network& net);

/// Writes rows in link order with 17 significant digits, so that
/// load_bounds(save_bounds(b)) == b.
void write_bounds(std::ostream& out, const FlowBox& box);
void save_bounds(const std::filesystem::path& file, const FlowBox& box);

/// s (h^s / r)^(1/nu): the flow at which a pump's head gain vanishes.
double pump_max_flow(double shutoff_head, double coeff, double nu, double speed);

/// Pipes and valves get [-Q, Q], pumps [floor, own max flow], with Q the
/// largest pump max flow. Throws NoPumps.
FlowBox default_box(const Network& net, double pump_floor = kDefaultPumpFloor);

/// Maps a unit-cube point into the box coordinate by coordinate.
void scale_unit_point(const FlowBox& box, std::span<const double> unit, std::span<double> out);

}  // namespace wdnlip
