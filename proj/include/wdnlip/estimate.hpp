#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace wdnlip {

enum class Method { Analytical, IntervalUpper, PointLower };
enum class Mode { Max, Sqrt };

std::string_view to_string(Method method) noexcept;
std::string_view to_string(Mode mode) noexcept;
Mode parse_mode(std::string_view token);

struct ClassConstants {
  double pipes = 0.0;
  double pumps = 0.0;
  double valves = 0.0;
};

struct LipschitzEstimate {
  double value = 0.0;
  Method method = Method::Analytical;
  Mode mode = Mode::Max;
  /// Interval method only: certified lower bound and upper - lower.
  std::optional<double> lower;
  std::optional<double> gap;
  /// Boxes processed (interval) or points evaluated (sampling); 0 for analytical.
  std::size_t effort = 0;
  /// Analytical method only.
  std::optional<ClassConstants> per_class;
  /// Interval method: why the search stopped ("gap", "max_iterations",
  /// "resolution_limit").
  std::optional<std::string> terminated_by;
};

nlohmann::ordered_json to_json(const LipschitzEstimate& est);

}  // namespace wdnlip
