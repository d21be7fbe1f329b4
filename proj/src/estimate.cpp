#include "wdnlip/estimate.hpp"

#include "wdnlip/errors.hpp"

namespace wdnlip {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Analytical: return "analytical";
    case Method::IntervalUpper: return "interval_upper";
    case Method::PointLower: return "point_lower";
  }
  return "analytical";
}

std::string_view to_string(Mode mode) noexcept { return mode == Mode::Max ? "max" : "sqrt"; }

Mode parse_mode(std::string_view token) {
  if (token == "max") return Mode::Max;
  if (token == "sqrt") return Mode::Sqrt;
  throw Error(ErrorKind::InvalidArgument, "unknown mode '" + std::string(token) + "'");
}

nlohmann::ordered_json to_json(const LipschitzEstimate& est) {
  nlohmann::ordered_json doc;
  doc["value"] = est.value;
  doc["method"] = std::string(to_string(est.method));
  doc["mode"] = std::string(to_string(est.mode));
  if (est.lower) doc["lower"] = *est.lower;
  doc["gap"] = est.gap ? nlohmann::ordered_json(*est.gap) : nlohmann::ordered_json(nullptr);
  doc["effort"] = est.effort;
  if (est.per_class) {
    doc["per_class"] = {{"pipes", est.per_class->pipes},
                        {"pumps", est.per_class->pumps},
                        {"valves", est.per_class->valves}};
  }
  if (est.terminated_by) doc["terminated_by"] = *est.terminated_by;
  return doc;
}

}  // namespace wdnlip
