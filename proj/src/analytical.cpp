#include "wdnlip/analytical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wdnlip/errors.hpp"
#include "wdnlip/hydraulics.hpp"

namespace wdnlip {

namespace {

void check_box(const Network& net, const FlowBox& box) {
  if (box.size() != net.link_count()) throw Error(ErrorKind::MissingLink, "box does not match the network");
}

double magnitude(const FlowInterval& b) { return std::max(std::abs(b.lo), std::abs(b.hi)); }

}  // namespace

double k_pipes(const Network& net, const FlowBox& box) {
  check_box(net, box);
  double k = 0.0;
  for (std::size_t i = 0; i < net.pipe_count(); ++i) {
    k = std::max(k, dheadloss_pipe(net.pipes()[i].resistance, net.flow_exponent(), magnitude(box.bounds[i])));
  }
  return k;
}

double k_pumps(const Network& net, const FlowBox& box) {
  check_box(net, box);
  double k = 0.0;
  for (std::size_t m = 0; m < net.pump_count(); ++m) {
    const auto& p = net.pumps()[m];
    k = std::max(k, dheadgain_pump(p.coeff, p.exponent, p.speed, box.bounds[net.pipe_count() + m].hi));
  }
  return k;
}

double k_valves(const Network& net, const FlowBox& box) {
  check_box(net, box);
  const std::size_t offset = net.pipe_count() + net.pump_count();
  double k = 0.0;
  for (std::size_t i = 0; i < net.valve_count(); ++i) {
    const auto& v = net.valves()[i];
    k = std::max(k, dheadloss_valve(v.openness, v.resistance, net.flow_exponent(), magnitude(box.bounds[offset + i])));
  }
  return k;
}

LipschitzEstimate k_network(const Network& net, const FlowBox& box) {
  LipschitzEstimate est;
  est.method = Method::Analytical;
  est.mode = Mode::Max;
  ClassConstants c{k_pipes(net, box), k_pumps(net, box), k_valves(net, box)};
  est.value = std::max({c.pipes, c.pumps, c.valves});
  est.per_class = c;
  return est;
}

std::vector<double> sup_jacobian_diag(const Network& net, const FlowBox& box) {
  check_box(net, box);
  std::vector<double> out(net.link_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& b = box.bounds[i];
    const double q = net.link_kind(i) == LinkKind::Pump ? b.hi : magnitude(b);
    out[i] = net.link_derivative(i, q);
  }
  return out;
}

double log_norm_diagonal(std::span<const double> diag) {
  double m = -std::numeric_limits<double>::infinity();
  for (double d : diag) m = std::max(m, d);
  return m;
}

LipschitzEstimate osl_network(const Network& net, const FlowBox& box) {
  LipschitzEstimate est = k_network(net, box);
  const auto diag = sup_jacobian_diag(net, box);
  // an empty network has no contribution, matching k_network
  est.value = diag.empty() ? 0.0 : std::max(0.0, log_norm_diagonal(diag));
  return est;
}

double pump_shortcut(double coeff, double nu, double s_min, double s_max, double q_bar) {
  const double s = nu <= 2.0 ? s_max : s_min;
  return dheadgain_pump(coeff, nu, s, q_bar);
}

}  // namespace wdnlip
