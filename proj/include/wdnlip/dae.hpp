#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wdnlip/network.hpp"

namespace wdnlip {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
  bool operator==(const Triplet&) const = default;
};

/// Sparse matrix in triplet form. Entries are kept in insertion order,
/// which the builders make row-major, so serialisation is byte-stable.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  std::span<const Triplet> entries() const noexcept { return entries_; }

  void add(std::size_t row, std::size_t col, double value);
  /// Sum of entries stored at (row, col); 0 if none.
  double at(std::size_t row, std::size_t col) const;
  /// y += M x
  void multiply_add(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
};

/// MatrixMarket coordinate real general, 1-based indices, %.17g values.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);

struct TimeMode {
  bool discrete = true;
  double dt = 1.0;

  static TimeMode discrete_step(double dt) { return {true, dt}; }
  static TimeMode continuous() { return {false, 0.0}; }
};

/// Offsets of the z blocks {x1 junction heads, x2 reservoir heads,
/// x3 tank heads, v pipe flows, u pump then valve flows}, and of the
/// row blocks {pipes, pumps and valves, tanks, junctions, reservoirs}.
struct DaeLayout {
  std::size_t x1 = 0, x2 = 0, x3 = 0, v = 0, u = 0, dim = 0;
  std::size_t pipe_rows = 0, control_rows = 0, tank_rows = 0, junction_rows = 0, reservoir_rows = 0;
  /// l = (d, h^R)
  std::size_t demand = 0, reservoir_head = 0, l_dim = 0;
};

/// E z+ = A z + B_f f(z) + B_l l, where z+ is the next state (discrete)
/// or the time derivative (continuous).
struct DaeSystem {
  DaeLayout layout;
  TimeMode mode;
  SparseMatrix E, A, Bf, Bl;
};

DaeSystem build_dae(const Network& net, TimeMode mode);

/// A z + B_f f(z) + B_l l - E z_next. Flows for f are read from z.
std::vector<double> dae_residual(const DaeSystem& dae, const Network& net, std::span<const double> z,
                                 std::span<const double> z_next, std::span<const double> l);

/// The l vector (demands, reservoir heads) from the network's own data.
std::vector<double> default_load(const Network& net);

nlohmann::ordered_json layout_json(const DaeSystem& dae, const Network& net);

/// Writes E.mtx, A.mtx, Bf.mtx, Bl.mtx and layout.json into `dir`.
void export_dae(const DaeSystem& dae, const Network& net, const std::filesystem::path& dir);

}  // namespace wdnlip
