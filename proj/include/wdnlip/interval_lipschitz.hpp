#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wdnlip/bnb.hpp"
#include "wdnlip/estimate.hpp"
#include "wdnlip/flow_box.hpp"
#include "wdnlip/network.hpp"

namespace wdnlip {

/// Enclosures of df_i/dq_i over a sub-box, in link order. The
/// multiplications follow the same order as the scalar derivatives, so
/// the enclosure brackets the binary64 derivative as well as the exact one.
std::vector<Interval> jac_entry_bounds(const Network& net, std::span<const Interval> box);

Box to_intervals(const FlowBox& box);

/// Interval objectives on boxes of link flows.
/// max:  max_i |df_i/dq_i|
/// sqrt: sqrt(sum_i (df_i/dq_i)^2)
/// osl:  max_i df_i/dq_i (largest eigenvalue of the symmetrised diagonal Jacobian)
BoxObjective lipschitz_objective(const Network& net, Mode mode);
BoxObjective osl_objective(const Network& net);

/// Bisects the coordinate that drives the objective: the entry with the
/// largest upper end (max mode) or the largest spread of its square (sqrt
/// mode). Bisecting a coordinate that does not carry the maximum cannot
/// tighten a max-type bound, so this avoids the blowup of a purely
/// geometric rule.
SplitRule lipschitz_split(const Network& net, Mode mode);

struct IntervalOptions {
  double gap_tol = 1e-6;
  std::size_t max_boxes = 1'000'000;
  std::function<void(const BnbProgress&)> progress;
  std::size_t progress_every = 1000;
  /// Use the generic widest-scaled rule instead of lipschitz_split.
  bool geometric_split = false;
};

/// Upper bound on K from max-mode BnB; `lower` and `gap` are filled in.
LipschitzEstimate k_upper_max(const Network& net, const FlowBox& box, const IntervalOptions& options);
/// Upper bound on the Frobenius-norm constant from sqrt-mode BnB.
LipschitzEstimate k_upper_sqrt(const Network& net, const FlowBox& box, const IntervalOptions& options);
/// Upper bound on L from BnB over the largest signed Jacobian entry.
LipschitzEstimate osl_upper(const Network& net, const FlowBox& box, const IntervalOptions& options);

/// Full BnB result for a mode, for callers that need the raw bounds.
BnbResult lipschitz_bnb(const Network& net, const FlowBox& box, Mode mode, const IntervalOptions& options);

}  // namespace wdnlip
