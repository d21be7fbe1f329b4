#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "wdnlip/interval.hpp"

namespace wdnlip {

using Box = std::vector<Interval>;

/// Interval extension of the function to maximise.
using BoxObjective = std::function<Interval(std::span<const Interval>)>;

/// Picks the coordinate to bisect. `root_widths` are the widths of the
/// initial box. Returning a coordinate that cannot be split makes the
/// search fall back to the widest splittable one.
using SplitRule = std::function<std::size_t(std::span<const Interval> box, std::span<const double> root_widths)>;

/// Default rule: largest width relative to the initial box, lowest index on ties.
std::size_t widest_scaled(std::span<const Interval> box, std::span<const double> root_widths);

struct BnbProgress {
  std::size_t boxes = 0;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  double wall_time = 0.0;  // seconds since start
};

/// One JSON object per line: {"boxes":..,"lower":..,"upper":..,"gap":..,"wall_time":..}
void write_progress_line(std::ostream& out, const BnbProgress& p);

struct BnbOptions {
  double gap_tol = 1e-6;
  std::size_t max_boxes = 1'000'000;
  SplitRule split;  // empty: widest_scaled
  std::function<void(const BnbProgress&)> progress;
  std::size_t progress_every = 1000;
};

enum class Termination { Gap, MaxIterations, ResolutionLimit };
std::string_view to_string(Termination t) noexcept;

struct BnbResult {
  double upper = 0.0;
  double lower = 0.0;
  double gap = 0.0;
  std::size_t boxes_processed = 0;
  Termination terminated_by = Termination::Gap;
  /// Point whose evaluation gave `lower`.
  std::vector<double> argmax;
};

/// Best-first interval branch and bound for max f over `root`.
///
/// The cover is a priority queue on interval upper bounds (insertion order
/// breaks ties). The lower bound is the best interval lower end seen at a
/// box midpoint. Boxes whose upper end falls below it are discarded. Stops
/// when upper - lower <= gap_tol, when another bisection would exceed
/// max_boxes evaluations, or when no remaining box can be bisected in
/// floating point.
BnbResult bnb_max(const BoxObjective& objective, std::span<const Interval> root, const BnbOptions& options);

}  // namespace wdnlip
