#include "wdnlip/interval_lipschitz.hpp"

#include "wdnlip/errors.hpp"

namespace wdnlip {

using namespace rounding;

namespace {

// Point enclosure of a product of two binary64 constants.
Interval product(double a, double b) { return {mul_down(a, b), mul_up(a, b)}; }

Interval power(double x, double p) { return {pow_down(x, p), pow_up(x, p)}; }

void check(const Network& net, std::span<const Interval> box) {
  if (box.size() != net.link_count()) throw Error(ErrorKind::InvalidArgument, "box does not match the network");
}

}  // namespace

std::vector<Interval> jac_entry_bounds(const Network& net, std::span<const Interval> box) {
  check(net, box);
  const double mu = net.flow_exponent();
  std::vector<Interval> out(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    switch (net.link_kind(i)) {
      case LinkKind::Pipe:
        out[i] = product(mu, net.pipes()[i].resistance) * abs_pow(box[i], mu - 1.0);
        break;
      case LinkKind::Pump: {
        const auto& p = net.pumps()[i - net.pipe_count()];
        if (!(box[i].lo > 0.0)) throw Error(ErrorKind::NonPositiveFlow, "pump box touches zero flow");
        out[i] = product(p.exponent, p.coeff) * pow(box[i], p.exponent - 1.0) * power(p.speed, 2.0 - p.exponent);
        break;
      }
      case LinkKind::Valve: {
        const auto& v = net.valves()[i - net.pipe_count() - net.pump_count()];
        out[i] = product(mu, v.openness) * Interval(v.resistance) * abs_pow(box[i], mu - 1.0);
        break;
      }
    }
  }
  return out;
}

Box to_intervals(const FlowBox& box) {
  Box out;
  out.reserve(box.size());
  for (const auto& b : box.bounds) out.emplace_back(b.lo, b.hi);
  return out;
}

BoxObjective lipschitz_objective(const Network& net, Mode mode) {
  if (mode == Mode::Max) {
    return [&net](std::span<const Interval> box) {
      const auto terms = jac_entry_bounds(net, box);
      Interval m(0.0);
      for (const auto& t : terms) m = max(m, abs(t));
      return m;
    };
  }
  return [&net](std::span<const Interval> box) {
    const auto terms = jac_entry_bounds(net, box);
    Interval s(0.0);
    for (const auto& t : terms) s = s + sqr(t);
    return sqrt(s);
  };
}

BoxObjective osl_objective(const Network& net) {
  return [&net](std::span<const Interval> box) {
    const auto terms = jac_entry_bounds(net, box);
    // empty network: no contribution
    if (terms.empty()) return Interval(0.0);
    Interval m = terms.front();
    for (const auto& t : terms) m = max(m, t);
    return max(m, Interval(0.0));
  };
}

SplitRule lipschitz_split(const Network& net, Mode mode) {
  return [&net, mode](std::span<const Interval> box, std::span<const double>) {
    const auto terms = jac_entry_bounds(net, box);
    std::size_t best = 0;
    double key = -1.0, tie = -1.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const Interval t = abs(terms[i]);
      const double k = mode == Mode::Max ? t.hi : t.hi * t.hi - t.lo * t.lo;
      const double w = t.width();
      if (k > key || (k == key && w > tie)) {
        key = k;
        tie = w;
        best = i;
      }
    }
    return best;
  };
}

BnbResult lipschitz_bnb(const Network& net, const FlowBox& box, Mode mode, const IntervalOptions& options) {
  BnbOptions opt;
  opt.gap_tol = options.gap_tol;
  opt.max_boxes = options.max_boxes;
  opt.progress = options.progress;
  opt.progress_every = options.progress_every;
  if (!options.geometric_split) opt.split = lipschitz_split(net, mode);
  return bnb_max(lipschitz_objective(net, mode), to_intervals(box), opt);
}

namespace {

LipschitzEstimate to_estimate(const BnbResult& r, Mode mode) {
  LipschitzEstimate est;
  est.method = Method::IntervalUpper;
  est.mode = mode;
  est.value = r.upper;
  est.lower = r.lower;
  est.gap = r.gap;
  est.effort = r.boxes_processed;
  est.terminated_by = std::string(to_string(r.terminated_by));
  return est;
}

}  // namespace

LipschitzEstimate k_upper_max(const Network& net, const FlowBox& box, const IntervalOptions& options) {
  return to_estimate(lipschitz_bnb(net, box, Mode::Max, options), Mode::Max);
}

LipschitzEstimate k_upper_sqrt(const Network& net, const FlowBox& box, const IntervalOptions& options) {
  return to_estimate(lipschitz_bnb(net, box, Mode::Sqrt, options), Mode::Sqrt);
}

LipschitzEstimate osl_upper(const Network& net, const FlowBox& box, const IntervalOptions& options) {
  BnbOptions opt;
  opt.gap_tol = options.gap_tol;
  opt.max_boxes = options.max_boxes;
  opt.progress = options.progress;
  opt.progress_every = options.progress_every;
  // the signed entries are nonnegative, so max-mode splitting applies unchanged
  if (!options.geometric_split) opt.split = lipschitz_split(net, Mode::Max);
  return to_estimate(bnb_max(osl_objective(net), to_intervals(box), opt), Mode::Max);
}

}  // namespace wdnlip
