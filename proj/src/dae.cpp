#include "wdnlip/dae.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "wdnlip/errors.hpp"

namespace wdnlip {

void SparseMatrix::add(std::size_t row, std::size_t col, double value) {
  if (row >= rows_ || col >= cols_) throw Error(ErrorKind::InvalidArgument, "sparse entry out of range");
  entries_.push_back({row, col, value});
}

double SparseMatrix::at(std::size_t row, std::size_t col) const {
  double sum = 0.0;
  for (const auto& t : entries_) {
    if (t.row == row && t.col == col) sum += t.value;
  }
  return sum;
}

void SparseMatrix::multiply_add(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  for (const auto& t : entries_) y[t.row] += t.value * x[t.col];
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
  char buf[64];
  for (const auto& t : m.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", t.value);
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << buf << '\n';
  }
}

namespace {

std::size_t head_column(const DaeLayout& lay, NodeRef node) {
  switch (node.kind) {
    case NodeKind::Junction: return lay.x1 + node.index;
    case NodeKind::Reservoir: return lay.x2 + node.index;
    case NodeKind::Tank: return lay.x3 + node.index;
  }
  return 0;
}

std::size_t flow_column(const DaeLayout& lay, const Network& net, std::size_t link) {
  return link < net.pipe_count() ? lay.v + link : lay.u + (link - net.pipe_count());
}

}  // namespace

DaeSystem build_dae(const Network& net, TimeMode mode) {
  if (mode.discrete && !(mode.dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");

  DaeSystem dae;
  dae.mode = mode;
  auto& lay = dae.layout;
  const std::size_t nj = net.junction_count(), nr = net.reservoir_count(), nt = net.tank_count();
  const std::size_t np = net.pipe_count(), nc = net.controllable_count();
  lay.x1 = 0;
  lay.x2 = nj;
  lay.x3 = nj + nr;
  lay.v = nj + nr + nt;
  lay.u = lay.v + np;
  lay.dim = lay.u + nc;
  lay.pipe_rows = 0;
  lay.control_rows = np;
  lay.tank_rows = np + nc;
  lay.junction_rows = lay.tank_rows + nt;
  lay.reservoir_rows = lay.junction_rows + nj;
  lay.demand = 0;
  lay.reservoir_head = nj;
  lay.l_dim = nj + nr;

  const std::size_t n = lay.dim;
  dae.E = SparseMatrix(n, n);
  dae.A = SparseMatrix(n, n);
  dae.Bf = SparseMatrix(n, net.link_count());
  dae.Bl = SparseMatrix(n, lay.l_dim);

  // Link rows: 0 = -h_from + h_to + f(q). Pump and valve rows carry no
  // tank-head term.
  for (std::size_t link = 0; link < net.link_count(); ++link) {
    const std::size_t row = link;
    const bool is_pipe = link < np;
    const NodeRef from = net.link_from(link), to = net.link_to(link);
    if (is_pipe || from.kind != NodeKind::Tank) dae.A.add(row, head_column(lay, from), -1.0);
    if (is_pipe || to.kind != NodeKind::Tank) dae.A.add(row, head_column(lay, to), 1.0);
    dae.Bf.add(row, link, 1.0);
  }

  // Tank rows, driven by pipe flows only.
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t row = lay.tank_rows + t;
    const std::size_t col = lay.x3 + t;
    const NodeRef node{NodeKind::Tank, t};
    dae.E.add(row, col, 1.0);
    const double scale = (mode.discrete ? mode.dt : 1.0) / net.tank_areas()[t];
    if (mode.discrete) dae.A.add(row, col, 1.0);
    for (auto link : net.inflow_links(node)) {
      if (link < np) dae.A.add(row, lay.v + link, scale);
    }
    for (auto link : net.outflow_links(node)) {
      if (link < np) dae.A.add(row, lay.v + link, -scale);
    }
  }

  // Junction rows: 0 = -inflow + outflow + d.
  for (std::size_t j = 0; j < nj; ++j) {
    const std::size_t row = lay.junction_rows + j;
    const NodeRef node{NodeKind::Junction, j};
    for (auto link : net.inflow_links(node)) dae.A.add(row, flow_column(lay, net, link), -1.0);
    for (auto link : net.outflow_links(node)) dae.A.add(row, flow_column(lay, net, link), 1.0);
    dae.Bl.add(row, lay.demand + j, 1.0);
  }

  // Reservoir rows: 0 = -x2 + h^R.
  for (std::size_t r = 0; r < nr; ++r) {
    const std::size_t row = lay.reservoir_rows + r;
    dae.A.add(row, lay.x2 + r, -1.0);
    dae.Bl.add(row, lay.reservoir_head + r, 1.0);
  }
  return dae;
}

std::vector<double> dae_residual(const DaeSystem& dae, const Network& net, std::span<const double> z,
                                 std::span<const double> z_next, std::span<const double> l) {
  const auto& lay = dae.layout;
  if (z.size() != lay.dim || z_next.size() != lay.dim || l.size() != lay.l_dim) {
    throw Error(ErrorKind::InvalidArgument, "residual vector sizes do not match the system");
  }
  FlowVector flows;
  flows.v.assign(z.begin() + static_cast<std::ptrdiff_t>(lay.v), z.begin() + static_cast<std::ptrdiff_t>(lay.u));
  flows.u.assign(z.begin() + static_cast<std::ptrdiff_t>(lay.u), z.end());
  const auto f = eval_f(net, flows);

  std::vector<double> res(lay.dim, 0.0);
  dae.A.multiply_add(z, res);
  dae.Bf.multiply_add(f, res);
  dae.Bl.multiply_add(l, res);
  std::vector<double> ez(lay.dim, 0.0);
  dae.E.multiply_add(z_next, ez);
  for (std::size_t i = 0; i < res.size(); ++i) res[i] -= ez[i];
  return res;
}

std::vector<double> default_load(const Network& net) {
  std::vector<double> l(net.junction_demands().begin(), net.junction_demands().end());
  l.insert(l.end(), net.reservoir_heads().begin(), net.reservoir_heads().end());
  return l;
}

nlohmann::ordered_json layout_json(const DaeSystem& dae, const Network& net) {
  using Json = nlohmann::ordered_json;
  const auto& lay = dae.layout;
  Json doc;
  doc["time_mode"] = dae.mode.discrete ? "discrete" : "continuous";
  if (dae.mode.discrete) doc["dt"] = dae.mode.dt;
  doc["dim"] = lay.dim;
  doc["z_offsets"] = {{"x1", lay.x1}, {"x2", lay.x2}, {"x3", lay.x3}, {"v", lay.v}, {"u", lay.u}};
  doc["row_offsets"] = {{"pipes", lay.pipe_rows},
                        {"pumps_valves", lay.control_rows},
                        {"tanks", lay.tank_rows},
                        {"junctions", lay.junction_rows},
                        {"reservoirs", lay.reservoir_rows}};
  doc["l_offsets"] = {{"demand", lay.demand}, {"reservoir_head", lay.reservoir_head}, {"dim", lay.l_dim}};

  Json z = Json::array();
  for (std::size_t i = 0; i < net.junction_count(); ++i) z.push_back(net.node_id({NodeKind::Junction, i}));
  for (std::size_t i = 0; i < net.reservoir_count(); ++i) z.push_back(net.node_id({NodeKind::Reservoir, i}));
  for (std::size_t i = 0; i < net.tank_count(); ++i) z.push_back(net.node_id({NodeKind::Tank, i}));
  for (std::size_t i = 0; i < net.link_count(); ++i) z.push_back(net.link_id(i));
  doc["z_ids"] = std::move(z);
  doc["matrices"] = {{"E", "E.mtx"}, {"A", "A.mtx"}, {"Bf", "Bf.mtx"}, {"Bl", "Bl.mtx"}};
  return doc;
}

void export_dae(const DaeSystem& dae, const Network& net, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](const std::string& name, const auto& writer) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / name).string());
    writer(out);
    if (!out) throw Error(ErrorKind::Io, "write failed for " + (dir / name).string());
  };
  write("E.mtx", [&](std::ostream& o) { write_matrix_market(o, dae.E); });
  write("A.mtx", [&](std::ostream& o) { write_matrix_market(o, dae.A); });
  write("Bf.mtx", [&](std::ostream& o) { write_matrix_market(o, dae.Bf); });
  write("Bl.mtx", [&](std::ostream& o) { write_matrix_market(o, dae.Bl); });
  write("layout.json", [&](std::ostream& o) { o << layout_json(dae, net).dump(2) << '\n'; });
}

}  // namespace wdnlip
