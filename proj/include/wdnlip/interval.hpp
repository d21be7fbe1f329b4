#pragma once

#include <iosfwd>

namespace wdnlip {

/// Directed rounding of single floating-point operations. The results
/// bracket the exact real result: down(a op b) <= a op b <= up(a op b).
namespace rounding {
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double sqrt_down(double x);
double sqrt_up(double x);
/// x^p for x >= 0. Exact for p in {0, 1}, directed multiply for p = 2,
/// otherwise the libm result widened by 4 ulp.
double pow_down(double x, double p);
double pow_up(double x, double p);
}  // namespace rounding

/// Closed interval [lo, hi] with outward-rounded arithmetic. Every
/// operation is inclusion isotonic.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  constexpr Interval(double point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
  Interval(double lo, double hi);

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const noexcept { return lo <= other.lo && other.hi <= hi; }
  bool operator==(const Interval&) const = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

/// {|x| : x in a}
Interval abs(const Interval& a);
/// Square, tighter than a * a when a straddles zero.
Interval sqr(const Interval& a);
/// Requires a.lo >= 0.
Interval sqrt(const Interval& a);
/// x^p over a nonnegative interval, p >= 0.
Interval pow(const Interval& a, double p);
/// |x|^p. p = 0 gives [1, 1].
Interval abs_pow(const Interval& a, double p);
/// Elementwise max: encloses {max(x, y)}.
Interval max(const Interval& a, const Interval& b);

std::ostream& operator<<(std::ostream& out, const Interval& a);

}  // namespace wdnlip
