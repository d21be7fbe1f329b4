#include <algorithm>
#include <array>
#include <cctype>

#include "wdnlip/description.hpp"
#include "wdnlip/errors.hpp"

namespace wdnlip {

namespace {

constexpr std::array<std::pair<FlowUnits, std::string_view>, 10> kUnitNames{{
    {FlowUnits::CFS, "CFS"},
    {FlowUnits::GPM, "GPM"},
    {FlowUnits::MGD, "MGD"},
    {FlowUnits::IMGD, "IMGD"},
    {FlowUnits::AFD, "AFD"},
    {FlowUnits::LPS, "LPS"},
    {FlowUnits::LPM, "LPM"},
    {FlowUnits::MLD, "MLD"},
    {FlowUnits::CMH, "CMH"},
    {FlowUnits::CMD, "CMD"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
         });
}

using Json = nlohmann::ordered_json;

template <class T>
T field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::InvalidArgument, std::string("missing key '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad value for '") + key + "': " + e.what());
  }
}

const Json& array_of(const Json& doc, const char* key) {
  static const Json empty = Json::array();
  if (!doc.contains(key)) return empty;
  const Json& arr = doc.at(key);
  if (!arr.is_array()) throw Error(ErrorKind::InvalidArgument, std::string("'") + key + "' must be an array");
  return arr;
}

}  // namespace

std::string_view to_string(FlowUnits units) noexcept {
  for (const auto& [u, name] : kUnitNames) {
    if (u == units) return name;
  }
  return "GPM";
}

std::string_view to_string(HeadlossFormula formula) noexcept {
  switch (formula) {
    case HeadlossFormula::HazenWilliams: return "H-W";
    case HeadlossFormula::DarcyWeisbach: return "D-W";
    case HeadlossFormula::ChezyManning: return "C-M";
  }
  return "H-W";
}

FlowUnits parse_flow_units(std::string_view token) {
  for (const auto& [u, name] : kUnitNames) {
    if (iequals(token, name)) return u;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown flow units '" + std::string(token) + "'");
}

HeadlossFormula parse_headloss_formula(std::string_view token) {
  if (iequals(token, "H-W") || iequals(token, "HW")) return HeadlossFormula::HazenWilliams;
  if (iequals(token, "D-W") || iequals(token, "DW")) return HeadlossFormula::DarcyWeisbach;
  if (iequals(token, "C-M") || iequals(token, "CM")) return HeadlossFormula::ChezyManning;
  throw Error(ErrorKind::InvalidArgument, "unknown headloss formula '" + std::string(token) + "'");
}

bool is_si(FlowUnits units) noexcept {
  switch (units) {
    case FlowUnits::LPS:
    case FlowUnits::LPM:
    case FlowUnits::MLD:
    case FlowUnits::CMH:
    case FlowUnits::CMD: return true;
    default: return false;
  }
}

double flow_exponent(HeadlossFormula formula) noexcept {
  return formula == HeadlossFormula::HazenWilliams ? 1.852 : 2.0;
}

nlohmann::ordered_json to_json(const NetworkDescription& desc) {
  Json doc;
  doc["units"] = std::string(to_string(desc.units));
  doc["headloss"] = std::string(to_string(desc.headloss));
  doc["junctions"] = Json::array();
  for (const auto& j : desc.junctions) {
    doc["junctions"].push_back({{"id", j.id}, {"elevation", j.elevation}, {"base_demand", j.base_demand}});
  }
  doc["reservoirs"] = Json::array();
  for (const auto& r : desc.reservoirs) doc["reservoirs"].push_back({{"id", r.id}, {"head", r.head}});
  doc["tanks"] = Json::array();
  for (const auto& t : desc.tanks) {
    doc["tanks"].push_back({{"id", t.id},
                            {"elevation", t.elevation},
                            {"init_level", t.init_level},
                            {"cross_section_area", t.cross_section_area}});
  }
  doc["pipes"] = Json::array();
  for (const auto& p : desc.pipes) {
    doc["pipes"].push_back({{"id", p.id},
                            {"from", p.from_node},
                            {"to", p.to_node},
                            {"resistance", p.resistance},
                            {"exponent", p.exponent}});
  }
  doc["pumps"] = Json::array();
  for (const auto& p : desc.pumps) {
    doc["pumps"].push_back({{"id", p.id},
                            {"from", p.from_node},
                            {"to", p.to_node},
                            {"shutoff_head", p.shutoff_head},
                            {"curve_coeff", p.curve_coeff},
                            {"curve_exponent", p.curve_exponent},
                            {"speed", p.speed}});
  }
  doc["valves"] = Json::array();
  for (const auto& v : desc.valves) {
    doc["valves"].push_back({{"id", v.id},
                             {"from", v.from_node},
                             {"to", v.to_node},
                             {"resistance", v.resistance},
                             {"openness", v.openness}});
  }
  doc["coordinates"] = Json::array();
  for (const auto& c : desc.coordinates) doc["coordinates"].push_back({{"id", c.id}, {"x", c.x}, {"y", c.y}});
  doc["warnings"] = desc.warnings;
  return doc;
}

NetworkDescription description_from_json(const nlohmann::ordered_json& doc) {
  NetworkDescription desc;
  desc.units = parse_flow_units(field<std::string>(doc, "units"));
  desc.headloss = parse_headloss_formula(field<std::string>(doc, "headloss"));
  for (const auto& j : array_of(doc, "junctions")) {
    desc.junctions.push_back(
        {field<std::string>(j, "id"), field<double>(j, "elevation"), field<double>(j, "base_demand")});
  }
  for (const auto& r : array_of(doc, "reservoirs")) {
    desc.reservoirs.push_back({field<std::string>(r, "id"), field<double>(r, "head")});
  }
  for (const auto& t : array_of(doc, "tanks")) {
    desc.tanks.push_back({field<std::string>(t, "id"), field<double>(t, "elevation"),
                          field<double>(t, "init_level"), field<double>(t, "cross_section_area")});
  }
  for (const auto& p : array_of(doc, "pipes")) {
    desc.pipes.push_back({field<std::string>(p, "id"), field<std::string>(p, "from"),
                          field<std::string>(p, "to"), field<double>(p, "resistance"),
                          field<double>(p, "exponent")});
  }
  for (const auto& p : array_of(doc, "pumps")) {
    desc.pumps.push_back({field<std::string>(p, "id"), field<std::string>(p, "from"),
                          field<std::string>(p, "to"), field<double>(p, "shutoff_head"),
                          field<double>(p, "curve_coeff"), field<double>(p, "curve_exponent"),
                          field<double>(p, "speed")});
  }
  for (const auto& v : array_of(doc, "valves")) {
    desc.valves.push_back({field<std::string>(v, "id"), field<std::string>(v, "from"),
                           field<std::string>(v, "to"), field<double>(v, "resistance"),
                           field<double>(v, "openness")});
  }
  for (const auto& c : array_of(doc, "coordinates")) {
    desc.coordinates.push_back({field<std::string>(c, "id"), field<double>(c, "x"), field<double>(c, "y")});
  }
  if (doc.contains("warnings")) desc.warnings = field<std::vector<std::string>>(doc, "warnings");
  return desc;
}

}  // namespace wdnlip
