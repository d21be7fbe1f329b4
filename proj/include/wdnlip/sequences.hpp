#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string_view>
#include <vector>

namespace wdnlip {

enum class SamplerKind { Random, Halton, Sobol };

std::string_view to_string(SamplerKind kind) noexcept;
SamplerKind parse_sampler(std::string_view token);

/// Largest dimension covered by the built-in Sobol direction numbers.
std::size_t sobol_max_dimension() noexcept;

/// Radical inverse of n in the given base.
double radical_inverse(std::uint64_t n, unsigned base);

/// The first `count` primes.
std::vector<unsigned> first_primes(std::size_t count);

/// A deterministic stream of points in [0,1)^d, produced in row-major
/// chunks. Streams restart from their first point on construction.
class PointSequence {
 public:
  virtual ~PointSequence() = default;
  std::size_t dimension() const noexcept { return dim_; }
  /// Appends the next `count` points (count * dimension values) to `out`.
  virtual void next(std::size_t count, std::vector<double>& out) = 0;

 protected:
  explicit PointSequence(std::size_t dim) : dim_(dim) {}
  std::size_t dim_;
};

/// Point j has coordinate k equal to the radical inverse of j + 1 in the
/// k-th prime.
class HaltonSequence final : public PointSequence {
 public:
  explicit HaltonSequence(std::size_t dim);
  void next(std::size_t count, std::vector<double>& out) override;

 private:
  std::vector<unsigned> bases_;
  std::uint64_t index_ = 1;
};

/// 32-bit Sobol points from the Joe-Kuo direction numbers, in Gray-code
/// order starting at index 1, so the first point is (0.5, ..., 0.5).
/// Throws DimensionTooLarge beyond the shipped table.
class SobolSequence final : public PointSequence {
 public:
  explicit SobolSequence(std::size_t dim);
  void next(std::size_t count, std::vector<double>& out) override;

 private:
  std::vector<std::array<std::uint32_t, 32>> directions_;
  std::vector<std::uint32_t> state_;
  std::uint64_t index_ = 0;  // index of the last point produced
};

/// i.i.d. uniform coordinates from std::mt19937_64; each coordinate takes
/// the top 53 bits of one draw, scaled by 2^-53.
class RandomSequence final : public PointSequence {
 public:
  RandomSequence(std::size_t dim, std::uint64_t seed);
  void next(std::size_t count, std::vector<double>& out) override;

 private:
  std::mt19937_64 engine_;
};

std::unique_ptr<PointSequence> make_sequence(SamplerKind kind, std::size_t dim, std::uint64_t seed = 0);

/// Convenience: the first n points as rows.
std::vector<std::vector<double>> halton(std::size_t d, std::size_t n);
std::vector<std::vector<double>> sobol(std::size_t d, std::size_t n);
std::vector<std::vector<double>> random_points(std::size_t d, std::size_t n, std::uint64_t seed);

}  // namespace wdnlip
