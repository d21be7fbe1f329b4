#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wdnlip/estimate.hpp"
#include "wdnlip/flow_box.hpp"
#include "wdnlip/network.hpp"
#include "wdnlip/sequences.hpp"

namespace wdnlip {

struct SamplingOptions {
  SamplerKind sampler = SamplerKind::Sobol;
  std::uint64_t seed = 0;  // random sampler only
  Mode mode = Mode::Max;
  /// Worker threads for point evaluation; 0 picks the hardware count.
  unsigned threads = 0;
  /// Points generated and evaluated per batch.
  std::size_t chunk = 4096;
};

/// Jacobian norm at one flow point (link order): max_i |df_i/dq_i| or
/// sqrt(sum_i (df_i/dq_i)^2).
double jacobian_norm(const Network& net, std::span<const double> flows, Mode mode);

/// Largest jacobian_norm over the first n points of the sequence, mapped
/// affinely into the box. A lower bound on the true constant. Parallel
/// runs return the same value as serial ones.
LipschitzEstimate k_lower(const Network& net, const FlowBox& box, std::size_t n, const SamplingOptions& options);

/// Running estimate at each checkpoint (sorted ascending) over one pass of
/// the sequence, so later entries extend earlier prefixes.
std::vector<std::pair<std::size_t, double>> k_lower_trace(const Network& net, const FlowBox& box,
                                                          std::span<const std::size_t> checkpoints,
                                                          const SamplingOptions& options);

}  // namespace wdnlip
