#pragma once

#include <span>
#include <vector>

#include "wdnlip/estimate.hpp"
#include "wdnlip/flow_box.hpp"
#include "wdnlip/network.hpp"

namespace wdnlip {

// Closed-form constants. Every link derivative is monotone in |q|, so its
// supremum over an interval sits at the endpoint of largest magnitude
// (pipes, valves) or at the upper bound (pumps). An empty class gives 0.

double k_pipes(const Network& net, const FlowBox& box);
double k_pumps(const Network& net, const FlowBox& box);
double k_valves(const Network& net, const FlowBox& box);

/// K = max{K^P, K^M, K^V}, with the class values in `per_class`.
LipschitzEstimate k_network(const Network& net, const FlowBox& box);

/// One-sided constant via the log norm of the Jacobian evaluated at each
/// link's worst point. Equals k_network exactly, since the Jacobian is
/// diagonal and nonnegative.
LipschitzEstimate osl_network(const Network& net, const FlowBox& box);

/// Per-link supremum of df_i/dq_i over the box, in link order.
std::vector<double> sup_jacobian_diag(const Network& net, const FlowBox& box);

/// Log norm (2-norm) of a diagonal matrix: its largest diagonal entry.
double log_norm_diagonal(std::span<const double> diag);

/// Pump constant for pumps sharing r and nu with speeds in [s_min, s_max]:
/// nu r q^(nu-1) s^(2-nu) at s_max when nu <= 2, else at s_min.
double pump_shortcut(double coeff, double nu, double s_min, double s_max, double q_bar);

}  // namespace wdnlip
