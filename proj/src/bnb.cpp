#include "wdnlip/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>

#include "wdnlip/errors.hpp"

namespace wdnlip {

std::size_t widest_scaled(std::span<const Interval> box, std::span<const double> root_widths) {
  std::size_t best = 0;
  double best_w = -1.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const double w = root_widths[i] > 0.0 ? box[i].width() / root_widths[i] : 0.0;
    if (w > best_w) {
      best_w = w;
      best = i;
    }
  }
  return best;
}

void write_progress_line(std::ostream& out, const BnbProgress& p) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "{\"boxes\":%zu,\"lower\":%.17g,\"upper\":%.17g,\"gap\":%.17g,\"wall_time\":%.6f}\n",
                p.boxes, p.lower, p.upper, p.gap, p.wall_time);
  out << buf;
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Gap: return "gap";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::ResolutionLimit: return "resolution_limit";
  }
  return "gap";
}

namespace {

struct Node {
  double upper;
  std::size_t seq;
  Box box;
};

struct ByUpper {
  bool operator()(const Node& a, const Node& b) const {
    if (a.upper != b.upper) return a.upper < b.upper;
    return a.seq > b.seq;  // earlier insertion first
  }
};

bool splittable(const Interval& x) {
  const double m = x.mid();
  return m > x.lo && m < x.hi;
}

}  // namespace

BnbResult bnb_max(const BoxObjective& objective, std::span<const Interval> root, const BnbOptions& options) {
  if (!(options.gap_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "gap tolerance must be positive");
  if (options.max_boxes == 0) throw Error(ErrorKind::InvalidArgument, "box budget must be positive");

  const auto start = std::chrono::steady_clock::now();
  std::vector<double> root_widths(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) root_widths[i] = root[i].width();

  BnbResult res;
  std::priority_queue<Node, std::vector<Node>, ByUpper> queue;
  std::size_t seq = 0;
  double lower = -std::numeric_limits<double>::infinity();
  double stuck_upper = -std::numeric_limits<double>::infinity();  // boxes that cannot be split
  std::vector<double> point(root.size());
  Box point_box(root.size());

  auto evaluate = [&](Box box) {
    const Interval value = objective(box);
    ++res.boxes_processed;
    for (std::size_t i = 0; i < box.size(); ++i) {
      point[i] = box[i].mid();
      point_box[i] = Interval(point[i]);
    }
    const double at_mid = objective(point_box).lo;
    if (at_mid > lower) {
      lower = at_mid;
      res.argmax = point;
    }
    if (value.hi >= lower) queue.push({value.hi, seq++, std::move(box)});
  };

  auto current_upper = [&] {
    double u = stuck_upper;
    if (!queue.empty()) u = std::max(u, queue.top().upper);
    return std::max(u, lower);
  };

  auto report = [&](double upper) {
    if (!options.progress) return;
    BnbProgress p;
    p.boxes = res.boxes_processed;
    p.lower = lower;
    p.upper = upper;
    p.gap = upper - lower;
    p.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    options.progress(p);
  };

  evaluate(Box(root.begin(), root.end()));
  std::size_t last_report = 0;

  while (true) {
    // drop boxes that can no longer hold the maximum
    while (!queue.empty() && queue.top().upper < lower) queue.pop();
    const double upper = current_upper();
    if (options.progress && res.boxes_processed - last_report >= options.progress_every) {
      report(upper);
      last_report = res.boxes_processed;
    }
    if (upper - lower <= options.gap_tol) {
      res.terminated_by = Termination::Gap;
      break;
    }
    if (queue.empty()) {
      res.terminated_by = Termination::ResolutionLimit;
      break;
    }
    // a bisection evaluates two boxes; never exceed the budget
    if (res.boxes_processed + 2 > options.max_boxes) {
      res.terminated_by = Termination::MaxIterations;
      break;
    }

    Node node = queue.top();
    queue.pop();
    std::size_t k = options.split ? options.split(node.box, root_widths) : widest_scaled(node.box, root_widths);
    if (k >= node.box.size() || !splittable(node.box[k])) {
      k = node.box.size();
      double best_w = -1.0;
      for (std::size_t i = 0; i < node.box.size(); ++i) {
        if (!splittable(node.box[i])) continue;
        const double w = root_widths[i] > 0.0 ? node.box[i].width() / root_widths[i] : 0.0;
        if (w > best_w) {
          best_w = w;
          k = i;
        }
      }
    }
    if (k == node.box.size()) {
      stuck_upper = std::max(stuck_upper, node.upper);
      continue;
    }
    const double m = node.box[k].mid();
    Box left = node.box;
    Box right = std::move(node.box);
    left[k].hi = m;
    right[k].lo = m;
    evaluate(std::move(left));
    evaluate(std::move(right));
  }

  res.lower = lower;
  res.upper = current_upper();
  res.gap = res.upper - res.lower;
  report(res.upper);
  return res;
}

}  // namespace wdnlip
