#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "wdnlip/analytical.hpp"
#include "wdnlip/bnb.hpp"
#include "wdnlip/interval_lipschitz.hpp"

using namespace wdnlip;

namespace {

NetworkDescription two_pipes(double r1, double r2) {
  NetworkDescription d;
  d.headloss = HeadlossFormula::DarcyWeisbach;
  d.junctions = {{"A", 0, 0}, {"B", 0, 0}};
  d.pipes = {{"P1", "A", "B", r1, 2.0}, {"P2", "A", "B", r2, 2.0}};
  return d;
}

FlowBox box_of(const Network& net, std::vector<FlowInterval> b) {
  FlowBox box;
  for (std::size_t i = 0; i < net.link_count(); ++i) box.link_ids.push_back(net.link_id(i));
  box.bounds = std::move(b);
  return box;
}

}  // namespace

TEST_CASE("bnb on |2q| over [0, 1]") {
  const BoxObjective f = [](std::span<const Interval> x) { return Interval(2.0) * abs(x[0]); };
  const Box root{Interval(0, 1)};
  const auto r = bnb_max(f, root, {});
  CHECK(r.upper >= 2.0);
  CHECK(r.upper <= 2.0 + 1e-6);
  CHECK(r.lower <= 2.0);
  CHECK(r.terminated_by == Termination::Gap);
  CHECK(r.gap == doctest::Approx(r.upper - r.lower));
}

TEST_CASE("constant objective closes the gap immediately") {
  const BoxObjective f = [](std::span<const Interval>) { return Interval(3.5); };
  const Box root{Interval(-1, 1), Interval(0, 2)};
  const auto r = bnb_max(f, root, {});
  CHECK(r.upper == 3.5);
  CHECK(r.lower == 3.5);
  CHECK(r.gap == 0.0);
  CHECK(r.boxes_processed == 1);
}

TEST_CASE("bnb finds an interior maximum") {
  // 1 - (x - 0.3)^2 - (y + 0.2)^2 peaks at 1
  const BoxObjective f = [](std::span<const Interval> x) {
    return Interval(1.0) - sqr(x[0] - Interval(0.3)) - sqr(x[1] + Interval(0.2));
  };
  const Box root{Interval(-1, 1), Interval(-1, 1)};
  BnbOptions opt;
  opt.gap_tol = 1e-8;
  const auto r = bnb_max(f, root, opt);
  CHECK(r.terminated_by == Termination::Gap);
  CHECK(r.upper >= 1.0);
  CHECK(r.upper - 1.0 <= 1e-8);
  REQUIRE(r.argmax.size() == 2);
  CHECK(r.argmax[0] == doctest::Approx(0.3).epsilon(1e-3));
  CHECK(r.argmax[1] == doctest::Approx(-0.2).epsilon(1e-3));
}

TEST_CASE("max_iterations and resolution_limit terminations") {
  const BoxObjective f = [](std::span<const Interval> x) {
    return Interval(1.0) - sqr(x[0] - Interval(0.3));
  };
  BnbOptions opt;
  opt.gap_tol = 1e-15;
  opt.max_boxes = 10;
  auto r = bnb_max(f, Box{Interval(-1, 1)}, opt);
  CHECK(r.terminated_by == Termination::MaxIterations);
  CHECK(r.boxes_processed <= 10);
  CHECK(r.boxes_processed >= 9);
  CHECK(r.upper >= 1.0);

  // a box of two adjacent doubles cannot be bisected
  const double a = 1.0, b = std::nextafter(1.0, 2.0);
  const BoxObjective wide = [](std::span<const Interval> x) { return x[0] + Interval(0.0, 1e-3); };
  opt.max_boxes = 1000;
  r = bnb_max(wide, Box{Interval(a, b)}, opt);
  CHECK(r.terminated_by == Termination::ResolutionLimit);
  CHECK(r.upper >= b + 1e-3);
  CHECK(to_string(r.terminated_by) == "resolution_limit");
}

TEST_CASE("progress lines are JSON") {
  const BoxObjective f = [](std::span<const Interval> x) {
    return Interval(1.0) - sqr(x[0] - Interval(0.3));
  };
  std::ostringstream out;
  BnbOptions opt;
  opt.gap_tol = 1e-12;
  opt.progress_every = 5;
  opt.progress = [&](const BnbProgress& p) { write_progress_line(out, p); };
  const auto r = bnb_max(f, Box{Interval(-1, 1)}, opt);
  std::istringstream in(out.str());
  std::string line;
  std::size_t lines = 0;
  double last_upper = HUGE_VAL;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"boxes", "lower", "upper", "gap", "wall_time"}) CHECK(j.contains(key));
    CHECK(j["upper"].get<double>() <= last_upper);
    last_upper = j["upper"].get<double>();
    ++lines;
  }
  CHECK(lines >= r.boxes_processed / 5);
}

TEST_CASE("three_node max mode reaches the analytical constant") {
  const auto fx = fixtures::load("three_node");
  IntervalOptions opt;
  opt.gap_tol = 1e-6;
  const auto est = k_upper_max(fx.net, fx.box, opt);
  const double k = k_network(fx.net, fx.box).value;
  CHECK(est.value == doctest::Approx(0.5023).epsilon(1e-3));
  CHECK(est.value >= k);
  CHECK(est.value - k <= 1e-6);
  REQUIRE(est.gap.has_value());
  CHECK(*est.gap <= 1e-6);
  CHECK(est.terminated_by.value() == "gap");
}

TEST_CASE("tighter gaps never loosen the bound") {
  const auto fx = fixtures::load("eight_node");
  double prev = HUGE_VAL;
  for (double gap : {1e-1, 1e-3, 1e-5, 1e-7}) {
    IntervalOptions opt;
    opt.gap_tol = gap;
    const auto est = k_upper_sqrt(fx.net, fx.box, opt);
    CHECK(est.value <= prev);
    prev = est.value;
  }
}

TEST_CASE("osl of a synthetic diagonal") {
  // entries in [-5, 0] and [0, 3]: the largest signed entry is 3
  const BoxObjective f = [](std::span<const Interval> x) { return max(Interval(-5.0) * x[0], Interval(3.0) * x[1]); };
  const auto r = bnb_max(f, Box{Interval(0, 1), Interval(0, 1)}, {});
  CHECK(r.upper >= 3.0);
  CHECK(r.upper <= 3.0 + 1e-6);
}

TEST_CASE("sqrt mode combines entries") {
  // derivatives 2 R q peak at 3 and 4 on [0, 1]
  const Network net(two_pipes(1.5, 2.0));
  const auto box = box_of(net, {{0, 1}, {0, 1}});
  IntervalOptions opt;
  const auto s = k_upper_sqrt(net, box, opt);
  CHECK(s.value >= 5.0);
  CHECK(s.value <= 5.0 + 1e-6);
  const auto m = k_upper_max(net, box, opt);
  CHECK(m.value >= 4.0);
  CHECK(m.value <= 4.0 + 1e-6);
}

TEST_CASE("single link: sqrt and max agree") {
  NetworkDescription d = two_pipes(1.5, 2.0);
  d.pipes.pop_back();
  const Network net(d);
  const auto box = box_of(net, {{-2, 1}});
  const auto s = k_upper_sqrt(net, box, {});
  const auto m = k_upper_max(net, box, {});
  CHECK(s.value == doctest::Approx(m.value).epsilon(1e-9));
  CHECK(m.value >= 6.0);
}

TEST_CASE("osl upper bound equals the max-mode bound on fixtures") {
  for (const auto& e : fixtures::all()) {
    const auto fx = fixtures::load(e);
    CAPTURE(fx.name);
    IntervalOptions opt;
    opt.gap_tol = fx.gap;
    const auto k = k_upper_max(fx.net, fx.box, opt);
    const auto l = osl_upper(fx.net, fx.box, opt);
    CHECK(l.value == k.value);
  }
}

TEST_CASE("geometric split also converges") {
  const auto fx = fixtures::load("three_node");
  IntervalOptions opt;
  opt.gap_tol = 1e-4;
  opt.geometric_split = true;
  const auto est = k_upper_max(fx.net, fx.box, opt);
  CHECK(est.value >= k_network(fx.net, fx.box).value);
  CHECK(*est.gap <= 1e-4);
}
