#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <utility>

#include "wdnlip/description.hpp"

namespace wdnlip {

/// Parses the supported subset of the EPANET INP format.
///
/// Recognised sections: [JUNCTIONS], [RESERVOIRS], [TANKS], [PIPES],
/// [PUMPS], [VALVES], [CURVES], [OPTIONS], [STATUS], [COORDINATES] and
/// [END]. Every other section is skipped and noted in `warnings`.
///
/// Pipe resistance is derived from length, diameter and roughness with the
/// friction formula named in [OPTIONS] (Hazen-Williams by default). Pump
/// head curves are reduced to h^s - r q^nu, see `fit_pump_curve`. Valves
/// must be GPVs whose setting names a headloss curve; openness comes from
/// a numeric [STATUS] entry and defaults to 1.
///
/// Throws `Error` with kinds MalformedSection, UnknownNodeRef, DuplicateId,
/// MissingRequiredSection or ParameterOutOfRange.
NetworkDescription parse_inp(std::string_view text);

/// Reads and parses a file. A missing or unreadable file raises ErrorKind::Io.
NetworkDescription parse_inp_file(const std::filesystem::path& path);

/// Resistance coefficient R such that headloss = R q |q|^(mu-1) with head
/// and flow in the file's units. Length and diameter use the EPANET
/// conventions (ft and in for US units, m and mm for SI); roughness is the
/// Hazen-Williams C, the Darcy-Weisbach sand roughness (millifeet or mm,
/// fully rough friction factor) or the Manning n.
double pipe_resistance(HeadlossFormula formula, FlowUnits units, double length,
                       double diameter, double roughness);

struct PumpCurveFit {
  double shutoff_head = 0.0;
  double coeff = 0.0;
  double exponent = 0.0;
};

/// Reduces a head curve given as (flow, head) points to h^s - r q^nu.
///
/// One point (q1, h1): h^s = 4/3 h1 and nu = 2. Three or more points with
/// the first at zero flow: h^s is the zero-flow head and (log r, nu) is the
/// least-squares line through (log q, log(h^s - h)) of the other points.
PumpCurveFit fit_pump_curve(std::span<const std::pair<double, double>> points);

/// Least-squares R for a valve headloss curve h = R q^mu, fitted in log space.
double fit_valve_resistance(std::span<const std::pair<double, double>> points, double mu);

}  // namespace wdnlip
