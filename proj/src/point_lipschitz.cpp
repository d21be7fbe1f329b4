#include "wdnlip/point_lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "wdnlip/errors.hpp"

namespace wdnlip {

double jacobian_norm(const Network& net, std::span<const double> flows, Mode mode) {
  if (mode == Mode::Max) {
    double m = 0.0;
    for (std::size_t i = 0; i < flows.size(); ++i) m = std::max(m, std::abs(net.link_derivative(i, flows[i])));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const double d = net.link_derivative(i, flows[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

unsigned worker_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Max of jacobian_norm over `count` unit points stored row-major. The max
// is exact, so the partition across threads cannot change the result.
double chunk_max(const Network& net, const FlowBox& box, const std::vector<double>& unit, std::size_t count,
                 Mode mode, unsigned threads) {
  const std::size_t d = box.size();
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> q(d);
    double m = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
      scale_unit_point(box, std::span(unit).subspan(j * d, d), q);
      m = std::max(m, jacobian_norm(net, q, mode));
    }
    return m;
  };
  const unsigned t = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, count / 256)));
  if (t <= 1) return work(0, count);

  std::vector<double> partial(t, 0.0);
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        partial[w] = work(count * w / t, count * (w + 1) / t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return *std::max_element(partial.begin(), partial.end());
}

void check_box(const Network& net, const FlowBox& box) {
  if (box.size() != net.link_count()) throw Error(ErrorKind::MissingLink, "box does not match the network");
}

}  // namespace

std::vector<std::pair<std::size_t, double>> k_lower_trace(const Network& net, const FlowBox& box,
                                                          std::span<const std::size_t> checkpoints,
                                                          const SamplingOptions& options) {
  check_box(net, box);
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw Error(ErrorKind::InvalidArgument, "checkpoints must be ascending");
  }
  if (options.chunk == 0) throw Error(ErrorKind::InvalidArgument, "chunk size must be positive");
  const unsigned threads = worker_count(options.threads);
  auto seq = make_sequence(options.sampler, box.size(), options.seed);

  std::vector<std::pair<std::size_t, double>> trace;
  std::vector<double> unit;
  std::size_t done = 0;
  double best = 0.0;
  for (std::size_t target : checkpoints) {
    while (done < target) {
      const std::size_t count = std::min(options.chunk, target - done);
      unit.clear();
      seq->next(count, unit);
      best = std::max(best, chunk_max(net, box, unit, count, options.mode, threads));
      done += count;
    }
    trace.emplace_back(target, best);
  }
  return trace;
}

LipschitzEstimate k_lower(const Network& net, const FlowBox& box, std::size_t n, const SamplingOptions& options) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  const std::size_t checkpoint[] = {n};
  const auto trace = k_lower_trace(net, box, checkpoint, options);
  LipschitzEstimate est;
  est.method = Method::PointLower;
  est.mode = options.mode;
  est.value = trace.back().second;
  est.effort = n;
  return est;
}

}  // namespace wdnlip
