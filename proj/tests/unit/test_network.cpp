#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "wdnlip/errors.hpp"
#include "wdnlip/hydraulics.hpp"
#include "wdnlip/network.hpp"

using namespace wdnlip;

TEST_CASE("scalar head-flow relations") {
  CHECK(headloss_pipe(1, 2, -3) == -9);
  CHECK(headloss_pipe(1, 1, 5) == 5);
  // reference values from 40-digit evaluation
  CHECK(headloss_pipe(2.346e-6, 1.852, 100) == doctest::Approx(0.011866646570593056).epsilon(1e-14));
  CHECK(headgain_pump(10, 1, 2, 1, 3) == -1);
  const double hs = 393.7008, r = 3.746e-6, nu = 2.59;
  CHECK(headgain_pump(hs, r, nu, 1, std::pow(hs / r, 1 / nu)) == doctest::Approx(0.0).epsilon(1e-12).scale(hs));
  CHECK(headgain_pump(hs, r, nu, 1, 500) == doctest::Approx(-357.06547199221835).epsilon(1e-14));
  CHECK_THROWS_AS(headgain_pump(hs, r, nu, 1, 0), Error);
  CHECK_THROWS_AS(headgain_pump(hs, r, nu, 1, -2), Error);
  CHECK(headloss_valve(1, 2.5, 1.852, 7) == headloss_pipe(2.5, 1.852, 7));
  CHECK(headloss_valve(0.5, 1, 2, 4) == 8);
  CHECK(headloss_valve(0.37, 2, 1.852, -4) == doctest::Approx(-9.643769546751350).epsilon(1e-14));
}

TEST_CASE("scalar derivatives") {
  CHECK(dheadloss_pipe(1, 2, -3) == 6);
  CHECK(dheadgain_pump(1, 1, 0.5, 17) == 0.5);
  CHECK(dheadgain_pump(3.746e-6, 2.59, 1, 100) == doctest::Approx(0.014684783130902873).epsilon(1e-14));
  try {
    dheadgain_pump(1, 2, 1, 0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPositiveFlow);
  }
}

TEST_CASE("three-node network layout") {
  const auto fx = fixtures::load("three_node");
  const Network& net = fx.net;
  CHECK(net.junction_count() == 1);
  CHECK(net.reservoir_count() == 1);
  CHECK(net.tank_count() == 1);
  CHECK(net.pipe_count() == 1);
  CHECK(net.pump_count() == 1);
  CHECK(net.valve_count() == 0);
  CHECK(net.link_id(0) == "23");
  CHECK(net.link_id(1) == "12");
  CHECK(net.link_kind(1) == LinkKind::Pump);
  CHECK(net.link_index("12") == 1);
  CHECK_THROWS_AS(net.link_index("nope"), Error);

  FlowVector flows{{100.0}, {500.0}};
  const auto f = eval_f(net, flows);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == headloss_pipe(net.pipes()[0].resistance, 2.0, 100.0));
  CHECK(f[1] == headgain_pump(net.pumps()[0].shutoff_head, net.pumps()[0].coeff, net.pumps()[0].exponent, 1, 500));
  CHECK(f[1] == doctest::Approx(-357.06547199221835).epsilon(1e-8));
  CHECK_THROWS_AS(eval_f(net, FlowVector{{1.0}, {0.0}}), Error);
  CHECK_THROWS_AS(eval_f(net, FlowVector{{1.0}, {}}), Error);
}

namespace {

NetworkDescription two_junctions(bool reversed) {
  NetworkDescription d;
  d.junctions = {{"A", 0, 0}, {"B", 0, 0}, {"C", 0, 0}};
  d.pipes = {{"P", reversed ? "B" : "A", reversed ? "A" : "B", 1.0, 2.0}};
  return d;
}

}  // namespace

TEST_CASE("neighbour sets follow link direction") {
  const Network fwd(two_junctions(false));
  const Network rev(two_junctions(true));
  const NodeRef a{NodeKind::Junction, 0}, b{NodeKind::Junction, 1}, c{NodeKind::Junction, 2};
  CHECK(fwd.outflow_links(a).size() == 1);
  CHECK(fwd.inflow_links(a).empty());
  CHECK(fwd.inflow_links(b).size() == 1);
  CHECK(rev.inflow_links(a).size() == 1);
  CHECK(rev.outflow_links(b).size() == 1);
  CHECK(fwd.inflow_links(c).empty());
  CHECK(fwd.outflow_links(c).empty());
}

TEST_CASE("tank step and junction residual") {
  NetworkDescription d;
  d.junctions = {{"J", 0, 3}};
  d.reservoirs = {{"R", 10}};
  d.tanks = {{"T", 0, 0, 100}};
  d.pipes = {{"in", "R", "T", 1, 2}, {"out", "T", "J", 1, 2}, {"j_in", "R", "J", 1, 2}};
  const Network net(d);
  const FlowVector flows{{5.0, 2.0, 1.0}, {}};
  const std::vector<double> h{7.0};
  CHECK(tank_step(net, h, flows, 10.0)[0] == doctest::Approx(7.3));
  CHECK(tank_step(net, h, FlowVector{{2.0, 2.0, 0.0}, {}}, 10.0)[0] == 7.0);
  // two dt steps under constant flow equal one 2 dt step
  const auto once = tank_step(net, tank_step(net, h, flows, 10.0), flows, 10.0);
  CHECK(once[0] == doctest::Approx(tank_step(net, h, flows, 20.0)[0]).epsilon(1e-15));
  CHECK_THROWS_AS(tank_step(net, h, flows, 0.0), Error);

  // junction J: inflow 2 + 1, demand 3
  const std::vector<double> dem{3.0};
  CHECK(junction_residual(net, flows, dem)[0] == 0.0);
  CHECK(junction_residual(net, FlowVector{{0, 0, 0}, {}}, std::vector<double>{0.0})[0] == 0.0);
  const FlowVector neg{{-5.0, -2.0, -1.0}, {}};
  CHECK(junction_residual(net, neg, std::vector<double>{-4.0})[0] == -junction_residual(net, flows, std::vector<double>{4.0})[0]);
}

TEST_CASE("jacobian is diagonal, odd components stay odd, and matches finite differences") {
  std::mt19937_64 rng(7);
  for (const auto& e : fixtures::all()) {
    const auto fx = fixtures::load(e);
    CAPTURE(fx.name);
    const Network& net = fx.net;
    const std::size_t n = net.link_count();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> q(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& b = fx.box.bounds[i];
        q[i] = b.lo + unit(rng) * b.width();
      }
      const auto base = eval_f(net, split_flows(net, q));
      const auto jac = eval_jacobian_diag(net, split_flows(net, q));
      const std::size_t j = static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
      auto moved = q;
      moved[j] += net.link_kind(j) == LinkKind::Pump ? 0.5 * (fx.box.bounds[j].hi - q[j]) + 1e-3 : 1.0;
      const auto f2 = eval_f(net, split_flows(net, moved));
      for (std::size_t i = 0; i < n; ++i) {
        if (i != j) CHECK(f2[i] == base[i]);
        CHECK(jac[i] >= 0.0);
      }
      if (net.link_kind(j) != LinkKind::Pump) {
        auto flipped = q;
        flipped[j] = -q[j];
        CHECK(eval_f(net, split_flows(net, flipped))[j] == -base[j]);
      }
    }
  }
}

TEST_CASE("pump jacobian entry with nu = 1 is r s") {
  NetworkDescription d;
  d.junctions = {{"A", 0, 0}, {"B", 0, 0}};
  d.pumps = {{"M", "A", "B", 10, 1, 1, 0.5}};
  const Network net(d);
  CHECK(eval_jacobian_diag(net, FlowVector{{}, {3.0}})[0] == 0.5);
}
