#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "wdnlip/dae.hpp"
#include "wdnlip/errors.hpp"

using namespace wdnlip;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("three-node discrete system, hand-built blocks") {
  const auto fx = fixtures::load("three_node");
  const DaeSystem dae = build_dae(fx.net, TimeMode::discrete_step(60.0));
  const auto& lay = dae.layout;
  REQUIRE(lay.dim == 5);
  // z = (h_J2, h_R1, h_T3, q_23, q_12)
  CHECK(lay.x1 == 0);
  CHECK(lay.x2 == 1);
  CHECK(lay.x3 == 2);
  CHECK(lay.v == 3);
  CHECK(lay.u == 4);
  const double area = fx.net.tank_areas()[0];
  CHECK(area == doctest::Approx(1963.4954084936208));

  // E: a single 1 at the tank position
  CHECK(dae.E.nonzeros() == 1);
  CHECK(dae.E.at(2, 2) == 1.0);

  const double expected_A[5][5] = {
      {-1, 0, 1, 0, 0},              // pipe 23: J2 -> T3
      {1, -1, 0, 0, 0},              // pump 12: R1 -> J2
      {0, 0, 1, 60.0 / area, 0},     // tank T3 fed by pipe 23
      {0, 0, 0, 1, -1},              // junction J2: pump in, pipe out
      {0, -1, 0, 0, 0},              // reservoir R1
  };
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      CAPTURE(r);
      CAPTURE(c);
      CHECK(dae.A.at(r, c) == expected_A[r][c]);
    }
  }
  CHECK(dae.A.at(2, 3) == doctest::Approx(0.030557749073643904).epsilon(1e-15));
  CHECK(dae.Bf.rows() == 5);
  CHECK(dae.Bf.cols() == 2);
  CHECK(dae.Bf.nonzeros() == 2);
  CHECK(dae.Bf.at(0, 0) == 1.0);
  CHECK(dae.Bf.at(1, 1) == 1.0);
  CHECK(dae.Bl.cols() == 2);
  CHECK(dae.Bl.at(3, 0) == 1.0);
  CHECK(dae.Bl.at(4, 1) == 1.0);
  CHECK(dae.Bl.nonzeros() == 2);
}

TEST_CASE("residual vanishes on a consistent state") {
  const auto fx = fixtures::load("three_node");
  const Network& net = fx.net;
  const DaeSystem dae = build_dae(net, TimeMode::discrete_step(60.0));
  const double q_pump = 500.0, demand = 100.0, q_pipe = q_pump - demand;
  const auto f = eval_f(net, FlowVector{{q_pipe}, {q_pump}});
  const double h_r = net.reservoir_heads()[0];
  const double h_j = h_r - f[1];
  const double h_t = h_j - f[0];
  const double h_t_next = h_t + 60.0 / net.tank_areas()[0] * q_pipe;
  const std::vector<double> z{h_j, h_r, h_t, q_pipe, q_pump};
  const std::vector<double> z_next{0.0, 0.0, h_t_next, 0.0, 0.0};
  const std::vector<double> l{demand, h_r};
  for (double r : dae_residual(dae, net, z, z_next, l)) CHECK(r == doctest::Approx(0.0).scale(400.0));
  CHECK(default_load(net) == std::vector<double>{100.0, 0.0});
}

TEST_CASE("continuous mode drops the carry-over and the time step") {
  const auto fx = fixtures::load("three_node");
  const DaeSystem dae = build_dae(fx.net, TimeMode::continuous());
  CHECK(dae.E.at(2, 2) == 1.0);
  CHECK(dae.A.at(2, 2) == 0.0);
  CHECK(dae.A.at(2, 3) == 1.0 / fx.net.tank_areas()[0]);
  CHECK_THROWS_AS(build_dae(fx.net, TimeMode::discrete_step(0.0)), Error);
}

TEST_CASE("no tanks means a purely algebraic system") {
  NetworkDescription d;
  d.junctions = {{"J", 0, 1}};
  d.reservoirs = {{"R", 5}};
  d.pipes = {{"P", "R", "J", 1.0, 2.0}};
  const Network net(d);
  const DaeSystem dae = build_dae(net, TimeMode::discrete_step(1.0));
  CHECK(dae.E.nonzeros() == 0);
  CHECK(dae.layout.dim == 3);
}

TEST_CASE("pump rows carry no tank head") {
  NetworkDescription d;
  d.junctions = {{"J", 0, 0}};
  d.tanks = {{"T", 0, 0, 10}};
  d.pumps = {{"M", "T", "J", 50, 1e-3, 2, 1}};
  const Network net(d);
  const DaeSystem dae = build_dae(net, TimeMode::discrete_step(1.0));
  const std::size_t row = dae.layout.control_rows;
  CHECK(dae.A.at(row, dae.layout.x3) == 0.0);
  CHECK(dae.A.at(row, dae.layout.x1) == 1.0);
}

TEST_CASE("square system and link-row structure on every fixture") {
  for (const auto& e : fixtures::all()) {
    const auto fx = fixtures::load(e);
    CAPTURE(fx.name);
    const Network& net = fx.net;
    const DaeSystem dae = build_dae(net, TimeMode::discrete_step(3600.0));
    const std::size_t rows = net.pipe_count() + net.controllable_count() + net.tank_count() + net.junction_count() +
                             net.reservoir_count();
    CHECK(dae.E.rows() == rows);
    CHECK(dae.layout.dim == rows);
    CHECK(dae.E.nonzeros() == net.tank_count());
    for (const auto& t : dae.E.entries()) {
      CHECK(t.value == 1.0);
      CHECK(t.row == t.col + dae.layout.tank_rows - dae.layout.x3);
    }
    std::vector<int> per_row(rows, 0);
    for (const auto& t : dae.Bf.entries()) {
      CHECK(std::abs(t.value) == 1.0);
      ++per_row[t.row];
    }
    for (std::size_t r = 0; r < rows; ++r) CHECK(per_row[r] == (r < net.link_count() ? 1 : 0));
  }
}

TEST_CASE("MatrixMarket export is stable and 1-based") {
  const auto fx = fixtures::load("three_node");
  const DaeSystem dae = build_dae(fx.net, TimeMode::discrete_step(60.0));
  std::ostringstream out;
  write_matrix_market(out, dae.Bf);
  CHECK(out.str() == "%%MatrixMarket matrix coordinate real general\n5 2 2\n1 1 1\n2 2 1\n");

  const auto dir = std::filesystem::temp_directory_path() / "wdnlip_dae_export";
  std::filesystem::remove_all(dir);
  export_dae(dae, fx.net, dir);
  const std::string first = slurp(dir / "A.mtx");
  export_dae(dae, fx.net, dir);
  CHECK(slurp(dir / "A.mtx") == first);
  const auto layout = nlohmann::json::parse(slurp(dir / "layout.json"));
  CHECK(layout["dim"] == 5);
  CHECK(layout["z_offsets"]["v"] == 3);
  CHECK(layout["z_ids"][3] == "23");
  std::filesystem::remove_all(dir);
}
