#include "wdnlip/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "wdnlip/errors.hpp"

namespace wdnlip {

namespace rounding {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude a product may have lost bits to gradual underflow,
// so the fma residual is no longer exact.
constexpr double kTiny = 0x1p-960;

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

// Rounding error of a + b (Knuth's TwoSum); exact when no overflow occurs.
double sum_error(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double add_down(double a, double b) {
  const double s = a + b;
  if (std::isinf(s)) return (s > 0 && std::isfinite(a) && std::isfinite(b)) ? kMax : s;
  if (std::isnan(s)) return s;
  return sum_error(a, b, s) < 0.0 ? down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  if (std::isinf(s)) return (s < 0 && std::isfinite(a) && std::isfinite(b)) ? -kMax : s;
  if (std::isnan(s)) return s;
  return sum_error(a, b, s) > 0.0 ? up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  const double p = a * b;
  if (std::isinf(p)) return (p > 0 && std::isfinite(a) && std::isfinite(b)) ? kMax : p;
  if (std::isnan(p)) return p;
  if (a == 0.0 || b == 0.0) return p;
  if (std::abs(p) < kTiny) return down(p);
  return std::fma(a, b, -p) < 0.0 ? down(p) : p;
}

double mul_up(double a, double b) {
  const double p = a * b;
  if (std::isinf(p)) return (p < 0 && std::isfinite(a) && std::isfinite(b)) ? -kMax : p;
  if (std::isnan(p)) return p;
  if (a == 0.0 || b == 0.0) return p;
  if (std::abs(p) < kTiny) return up(p);
  return std::fma(a, b, -p) > 0.0 ? up(p) : p;
}

double sqrt_down(double x) {
  if (!(x > 0.0) || std::isinf(x)) return std::sqrt(x);
  const double r = std::sqrt(x);
  if (x < kTiny) return down(r);
  return std::fma(r, r, -x) > 0.0 ? down(r) : r;
}

double sqrt_up(double x) {
  if (!(x > 0.0) || std::isinf(x)) return std::sqrt(x);
  const double r = std::sqrt(x);
  if (x < kTiny) return up(r);
  return std::fma(r, r, -x) < 0.0 ? up(r) : r;
}

double pow_down(double x, double p) {
  if (x < 0.0) throw Error(ErrorKind::InvalidArgument, "pow of a negative base");
  if (p == 0.0 || x == 1.0) return 1.0;
  if (p == 1.0) return x;
  if (x == 0.0) return p > 0.0 ? 0.0 : kInf;
  if (p == 2.0) return mul_down(x, x);
  double r = std::pow(x, p);
  for (int i = 0; i < 4; ++i) r = down(r);
  return std::max(r, 0.0);
}

double pow_up(double x, double p) {
  if (x < 0.0) throw Error(ErrorKind::InvalidArgument, "pow of a negative base");
  if (p == 0.0 || x == 1.0) return 1.0;
  if (p == 1.0) return x;
  if (x == 0.0) return p > 0.0 ? 0.0 : kInf;
  if (p == 2.0) return mul_up(x, x);
  double r = std::pow(x, p);
  for (int i = 0; i < 4; ++i) r = up(r);
  return r;
}

}  // namespace rounding

using namespace rounding;

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo_ <= hi_)) throw Error(ErrorKind::InvalidArgument, "interval with lo > hi or NaN bound");
}

double Interval::mid() const noexcept { return std::midpoint(lo, hi); }

Interval operator+(const Interval& a, const Interval& b) {
  return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {sub_down(a.lo, b.hi), sub_up(a.hi, b.lo)};
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
  const double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval abs(const Interval& a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return -a;
  return {0.0, std::max(-a.lo, a.hi)};
}

Interval sqr(const Interval& a) {
  const Interval m = abs(a);
  return {mul_down(m.lo, m.lo), mul_up(m.hi, m.hi)};
}

Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) throw Error(ErrorKind::InvalidArgument, "sqrt of an interval with negative part");
  return {sqrt_down(a.lo), sqrt_up(a.hi)};
}

Interval pow(const Interval& a, double p) {
  if (a.lo < 0.0) throw Error(ErrorKind::InvalidArgument, "pow of an interval with negative part");
  if (!(p >= 0.0)) throw Error(ErrorKind::InvalidArgument, "pow exponent must be nonnegative");
  return {pow_down(a.lo, p), pow_up(a.hi, p)};
}

Interval abs_pow(const Interval& a, double p) { return pow(abs(a), p); }

Interval max(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }

std::ostream& operator<<(std::ostream& out, const Interval& a) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", a.lo, a.hi);
  return out << buf;
}

}  // namespace wdnlip
