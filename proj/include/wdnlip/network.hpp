#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wdnlip/description.hpp"

namespace wdnlip {

enum class NodeKind { Junction, Reservoir, Tank };
enum class LinkKind { Pipe, Pump, Valve };

struct NodeRef {
  NodeKind kind = NodeKind::Junction;
  std::size_t index = 0;  // index within its kind
  bool operator==(const NodeRef&) const = default;
};

/// Link flows in model order: v holds pipe flows, u holds pump flows
/// followed by valve flows.
struct FlowVector {
  std::vector<double> v;
  std::vector<double> u;

  /// Concatenation v ++ u, the link order used everywhere else.
  std::vector<double> flat() const;
};

struct PipeParams {
  double resistance;
};

struct PumpParams {
  double shutoff_head;
  double coeff;
  double exponent;
  double speed;
};

struct ValveParams {
  double openness;
  double resistance;
};

/// Index-resolved network. Links are numbered pipes first, then pumps,
/// then valves, each in declaration order; nodes are numbered within
/// their kind. Immutable after construction.
class Network {
 public:
  explicit Network(const NetworkDescription& desc);

  std::size_t junction_count() const noexcept { return junction_ids_.size(); }
  std::size_t reservoir_count() const noexcept { return reservoir_ids_.size(); }
  std::size_t tank_count() const noexcept { return tank_ids_.size(); }
  std::size_t pipe_count() const noexcept { return pipes_.size(); }
  std::size_t pump_count() const noexcept { return pumps_.size(); }
  std::size_t valve_count() const noexcept { return valves_.size(); }
  std::size_t link_count() const noexcept { return link_ids_.size(); }
  /// Length of u: pumps plus valves.
  std::size_t controllable_count() const noexcept { return pumps_.size() + valves_.size(); }

  double flow_exponent() const noexcept { return mu_; }
  FlowUnits units() const noexcept { return units_; }

  const std::string& link_id(std::size_t link) const { return link_ids_.at(link); }
  LinkKind link_kind(std::size_t link) const;
  NodeRef link_from(std::size_t link) const { return link_from_.at(link); }
  NodeRef link_to(std::size_t link) const { return link_to_.at(link); }
  /// Position of a link id in the link order; throws UnknownLink.
  std::size_t link_index(const std::string& id) const;

  const std::string& node_id(NodeRef node) const;

  /// Links carrying flow into / out of a node (by declared direction).
  std::span<const std::size_t> inflow_links(NodeRef node) const;
  std::span<const std::size_t> outflow_links(NodeRef node) const;

  std::span<const PipeParams> pipes() const noexcept { return pipes_; }
  std::span<const PumpParams> pumps() const noexcept { return pumps_; }
  std::span<const ValveParams> valves() const noexcept { return valves_; }
  std::span<const double> tank_areas() const noexcept { return tank_areas_; }
  std::span<const double> tank_elevations() const noexcept { return tank_elevations_; }
  std::span<const double> reservoir_heads() const noexcept { return reservoir_heads_; }
  std::span<const double> junction_demands() const noexcept { return junction_demands_; }

  /// f_i(q) for one link, q being that link's flow.
  double link_function(std::size_t link, double q) const;
  /// df_i/dq_i for one link; the Jacobian of f is diagonal.
  double link_derivative(std::size_t link, double q) const;

 private:
  std::size_t node_slot(NodeRef node) const;

  FlowUnits units_;
  double mu_;
  std::vector<std::string> junction_ids_, reservoir_ids_, tank_ids_;
  std::vector<std::string> link_ids_;
  std::vector<NodeRef> link_from_, link_to_;
  std::vector<PipeParams> pipes_;
  std::vector<PumpParams> pumps_;
  std::vector<ValveParams> valves_;
  std::vector<double> tank_areas_, tank_elevations_, reservoir_heads_, junction_demands_;
  // per node slot (junctions, reservoirs, tanks): incident link indices
  std::vector<std::vector<std::size_t>> inflow_, outflow_;
};

/// Network construction as a free function.
Network build_network(const NetworkDescription& desc);

/// Stacked nonlinearity: pipe headlosses, pump headgains, valve headlosses.
std::vector<double> eval_f(const Network& net, const FlowVector& flows);

/// Diagonal of the Jacobian of eval_f.
std::vector<double> eval_jacobian_diag(const Network& net, const FlowVector& flows);

/// One explicit tank step: h + dt / A (inflow - outflow), over all links
/// incident to each tank.
std::vector<double> tank_step(const Network& net, std::span<const double> tank_heads,
                              const FlowVector& flows, double dt);

/// Mass-balance residual per junction: inflow - outflow - demand.
std::vector<double> junction_residual(const Network& net, const FlowVector& flows,
                                      std::span<const double> demand);

/// Builds a FlowVector from flows in link order.
FlowVector split_flows(const Network& net, std::span<const double> link_flows);

}  // namespace wdnlip
