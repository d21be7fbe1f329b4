#include "wdnlip/network.hpp"

#include <unordered_map>

#include "wdnlip/errors.hpp"
#include "wdnlip/hydraulics.hpp"

namespace wdnlip {

std::vector<double> FlowVector::flat() const {
  std::vector<double> out(v);
  out.insert(out.end(), u.begin(), u.end());
  return out;
}

Network::Network(const NetworkDescription& desc)
    : units_(desc.units), mu_(wdnlip::flow_exponent(desc.headloss)) {
  std::unordered_map<std::string, NodeRef> nodes;
  for (std::size_t i = 0; i < desc.junctions.size(); ++i) {
    junction_ids_.push_back(desc.junctions[i].id);
    junction_demands_.push_back(desc.junctions[i].base_demand);
    nodes[desc.junctions[i].id] = {NodeKind::Junction, i};
  }
  for (std::size_t i = 0; i < desc.reservoirs.size(); ++i) {
    reservoir_ids_.push_back(desc.reservoirs[i].id);
    reservoir_heads_.push_back(desc.reservoirs[i].head);
    nodes[desc.reservoirs[i].id] = {NodeKind::Reservoir, i};
  }
  for (std::size_t i = 0; i < desc.tanks.size(); ++i) {
    tank_ids_.push_back(desc.tanks[i].id);
    tank_areas_.push_back(desc.tanks[i].cross_section_area);
    tank_elevations_.push_back(desc.tanks[i].elevation);
    nodes[desc.tanks[i].id] = {NodeKind::Tank, i};
  }
  if (!desc.pipes.empty()) mu_ = desc.pipes.front().exponent;

  const std::size_t slots = junction_ids_.size() + reservoir_ids_.size() + tank_ids_.size();
  inflow_.resize(slots);
  outflow_.resize(slots);

  auto resolve = [&](const std::string& id) {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw Error(ErrorKind::UnknownNodeRef, id);
    return it->second;
  };
  auto add_link = [&](const std::string& id, const std::string& from, const std::string& to) {
    const std::size_t link = link_ids_.size();
    link_ids_.push_back(id);
    link_from_.push_back(resolve(from));
    link_to_.push_back(resolve(to));
    outflow_[node_slot(link_from_.back())].push_back(link);
    inflow_[node_slot(link_to_.back())].push_back(link);
  };
  for (const auto& p : desc.pipes) {
    add_link(p.id, p.from_node, p.to_node);
    pipes_.push_back({p.resistance});
  }
  for (const auto& p : desc.pumps) {
    add_link(p.id, p.from_node, p.to_node);
    pumps_.push_back({p.shutoff_head, p.curve_coeff, p.curve_exponent, p.speed});
  }
  for (const auto& v : desc.valves) {
    add_link(v.id, v.from_node, v.to_node);
    valves_.push_back({v.openness, v.resistance});
  }
}

Network build_network(const NetworkDescription& desc) { return Network(desc); }

LinkKind Network::link_kind(std::size_t link) const {
  if (link < pipes_.size()) return LinkKind::Pipe;
  if (link < pipes_.size() + pumps_.size()) return LinkKind::Pump;
  if (link < link_ids_.size()) return LinkKind::Valve;
  throw Error(ErrorKind::InvalidArgument, "link index " + std::to_string(link) + " out of range");
}

std::size_t Network::link_index(const std::string& id) const {
  for (std::size_t i = 0; i < link_ids_.size(); ++i) {
    if (link_ids_[i] == id) return i;
  }
  throw Error(ErrorKind::UnknownLink, id);
}

std::size_t Network::node_slot(NodeRef node) const {
  switch (node.kind) {
    case NodeKind::Junction: return node.index;
    case NodeKind::Reservoir: return junction_ids_.size() + node.index;
    case NodeKind::Tank: return junction_ids_.size() + reservoir_ids_.size() + node.index;
  }
  return 0;
}

const std::string& Network::node_id(NodeRef node) const {
  switch (node.kind) {
    case NodeKind::Junction: return junction_ids_.at(node.index);
    case NodeKind::Reservoir: return reservoir_ids_.at(node.index);
    case NodeKind::Tank: return tank_ids_.at(node.index);
  }
  throw Error(ErrorKind::InvalidArgument, "bad node kind");
}

std::span<const std::size_t> Network::inflow_links(NodeRef node) const { return inflow_.at(node_slot(node)); }
std::span<const std::size_t> Network::outflow_links(NodeRef node) const { return outflow_.at(node_slot(node)); }

double Network::link_function(std::size_t link, double q) const {
  switch (link_kind(link)) {
    case LinkKind::Pipe: return headloss_pipe(pipes_[link].resistance, mu_, q);
    case LinkKind::Pump: {
      const auto& p = pumps_[link - pipes_.size()];
      return headgain_pump(p.shutoff_head, p.coeff, p.exponent, p.speed, q);
    }
    case LinkKind::Valve: {
      const auto& v = valves_[link - pipes_.size() - pumps_.size()];
      return headloss_valve(v.openness, v.resistance, mu_, q);
    }
  }
  return 0.0;
}

double Network::link_derivative(std::size_t link, double q) const {
  switch (link_kind(link)) {
    case LinkKind::Pipe: return dheadloss_pipe(pipes_[link].resistance, mu_, q);
    case LinkKind::Pump: {
      const auto& p = pumps_[link - pipes_.size()];
      return dheadgain_pump(p.coeff, p.exponent, p.speed, q);
    }
    case LinkKind::Valve: {
      const auto& v = valves_[link - pipes_.size() - pumps_.size()];
      return dheadloss_valve(v.openness, v.resistance, mu_, q);
    }
  }
  return 0.0;
}

namespace {

void check_lengths(const Network& net, const FlowVector& flows) {
  if (flows.v.size() != net.pipe_count() || flows.u.size() != net.controllable_count()) {
    throw Error(ErrorKind::InvalidArgument, "flow vector does not match the network");
  }
}

double flow_of(const Network& net, const FlowVector& flows, std::size_t link) {
  return link < net.pipe_count() ? flows.v[link] : flows.u[link - net.pipe_count()];
}

}  // namespace

FlowVector split_flows(const Network& net, std::span<const double> link_flows) {
  if (link_flows.size() != net.link_count()) {
    throw Error(ErrorKind::InvalidArgument, "flow count does not match the network");
  }
  FlowVector out;
  out.v.assign(link_flows.begin(), link_flows.begin() + static_cast<std::ptrdiff_t>(net.pipe_count()));
  out.u.assign(link_flows.begin() + static_cast<std::ptrdiff_t>(net.pipe_count()), link_flows.end());
  return out;
}

std::vector<double> eval_f(const Network& net, const FlowVector& flows) {
  check_lengths(net, flows);
  std::vector<double> out(net.link_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = net.link_function(i, flow_of(net, flows, i));
  return out;
}

std::vector<double> eval_jacobian_diag(const Network& net, const FlowVector& flows) {
  check_lengths(net, flows);
  std::vector<double> out(net.link_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = net.link_derivative(i, flow_of(net, flows, i));
  return out;
}

std::vector<double> tank_step(const Network& net, std::span<const double> tank_heads,
                              const FlowVector& flows, double dt) {
  check_lengths(net, flows);
  if (tank_heads.size() != net.tank_count()) throw Error(ErrorKind::InvalidArgument, "tank head count");
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
  std::vector<double> out(tank_heads.begin(), tank_heads.end());
  for (std::size_t t = 0; t < out.size(); ++t) {
    const NodeRef node{NodeKind::Tank, t};
    double net_inflow = 0.0;
    for (auto link : net.inflow_links(node)) net_inflow += flow_of(net, flows, link);
    for (auto link : net.outflow_links(node)) net_inflow -= flow_of(net, flows, link);
    out[t] += dt / net.tank_areas()[t] * net_inflow;
  }
  return out;
}

std::vector<double> junction_residual(const Network& net, const FlowVector& flows,
                                      std::span<const double> demand) {
  check_lengths(net, flows);
  if (demand.size() != net.junction_count()) throw Error(ErrorKind::InvalidArgument, "demand count");
  std::vector<double> out(net.junction_count());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const NodeRef node{NodeKind::Junction, j};
    double r = 0.0;
    for (auto link : net.inflow_links(node)) r += flow_of(net, flows, link);
    for (auto link : net.outflow_links(node)) r -= flow_of(net, flows, link);
    out[j] = r - demand[j];
  }
  return out;
}

}  // namespace wdnlip
