#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wdnlip {

/// Flow units of an input file. All constants are reported in the file's
/// own unit system; the units only matter when converting pipe geometry
/// into a resistance coefficient.
enum class FlowUnits { CFS, GPM, MGD, IMGD, AFD, LPS, LPM, MLD, CMH, CMD };

/// Friction formula selected in [OPTIONS]; fixes the flow exponent mu.
enum class HeadlossFormula { HazenWilliams, DarcyWeisbach, ChezyManning };

std::string_view to_string(FlowUnits units) noexcept;
std::string_view to_string(HeadlossFormula formula) noexcept;
FlowUnits parse_flow_units(std::string_view token);
HeadlossFormula parse_headloss_formula(std::string_view token);

bool is_si(FlowUnits units) noexcept;
/// Exponent mu of the friction law: 1.852 for Hazen-Williams, 2 otherwise.
double flow_exponent(HeadlossFormula formula) noexcept;

struct JunctionSpec {
  std::string id;
  double elevation = 0.0;
  double base_demand = 0.0;
  bool operator==(const JunctionSpec&) const = default;
};

struct ReservoirSpec {
  std::string id;
  double head = 0.0;
  bool operator==(const ReservoirSpec&) const = default;
};

struct TankSpec {
  std::string id;
  double elevation = 0.0;
  double init_level = 0.0;
  double cross_section_area = 0.0;
  bool operator==(const TankSpec&) const = default;
};

struct PipeSpec {
  std::string id;
  std::string from_node;
  std::string to_node;
  double resistance = 0.0;  // R, headloss per flow^mu
  double exponent = 0.0;    // mu
  bool operator==(const PipeSpec&) const = default;
};

struct PumpSpec {
  std::string id;
  std::string from_node;
  std::string to_node;
  double shutoff_head = 0.0;    // h^s
  double curve_coeff = 0.0;     // r
  double curve_exponent = 0.0;  // nu
  double speed = 1.0;           // s
  bool operator==(const PumpSpec&) const = default;
};

/// General purpose valve, modelled as a pipe with openness-scaled resistance.
struct ValveSpec {
  std::string id;
  std::string from_node;
  std::string to_node;
  double resistance = 0.0;
  double openness = 1.0;
  bool operator==(const ValveSpec&) const = default;
};

struct Coordinate {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Coordinate&) const = default;
};

/// Parsed, validated network as read from an input file. Ids are still
/// strings here; `Network` resolves them into indices.
struct NetworkDescription {
  FlowUnits units = FlowUnits::GPM;
  HeadlossFormula headloss = HeadlossFormula::HazenWilliams;
  std::vector<JunctionSpec> junctions;
  std::vector<ReservoirSpec> reservoirs;
  std::vector<TankSpec> tanks;
  std::vector<PipeSpec> pipes;
  std::vector<PumpSpec> pumps;
  std::vector<ValveSpec> valves;
  std::vector<Coordinate> coordinates;
  std::vector<std::string> warnings;

  bool operator==(const NetworkDescription&) const = default;
};

/// Canonical JSON form with a fixed key order.
nlohmann::ordered_json to_json(const NetworkDescription& desc);
NetworkDescription description_from_json(const nlohmann::ordered_json& doc);

}  // namespace wdnlip
