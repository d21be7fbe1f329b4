#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "wdnlip/interval.hpp"
#include "wdnlip/interval_lipschitz.hpp"

using namespace wdnlip;
using Quad = boost::multiprecision::cpp_bin_float_quad;

namespace {

// Random doubles spread over many binades and both signs.
double random_double(std::mt19937_64& rng, int min_exp = -40, int max_exp = 40) {
  std::uniform_real_distribution<double> mant(1.0, 2.0);
  std::uniform_int_distribution<int> ex(min_exp, max_exp);
  std::bernoulli_distribution sign(0.5);
  const double x = std::ldexp(mant(rng), ex(rng));
  return sign(rng) ? -x : x;
}

}  // namespace

TEST_CASE("basic interval operations") {
  CHECK(Interval(1, 2) + Interval(-1, 3) == Interval(0, 5));
  CHECK(Interval(1, 2) - Interval(-1, 3) == Interval(-2, 3));
  CHECK(Interval(-2, 3) * Interval(4, 5) == Interval(-10, 15));
  CHECK(abs(Interval(-2, 1)) == Interval(0, 2));
  CHECK(abs(Interval(-3, -1)) == Interval(1, 3));
  CHECK(sqr(Interval(-2, 1)) == Interval(0, 4));
  CHECK(sqrt(Interval(4, 9)) == Interval(2, 3));
  CHECK(max(Interval(-1, 5), Interval(2, 3)) == Interval(2, 5));
  CHECK_THROWS(Interval(2, 1));
  CHECK_THROWS(sqrt(Interval(-1, 1)));
}

TEST_CASE("abs_pow") {
  CHECK(abs_pow(Interval(-2, 3), 2) == Interval(0, 9));
  CHECK(abs_pow(Interval(-2, 3), 1) == Interval(0, 3));
  CHECK(abs_pow(Interval(-2, 3), 0) == Interval(1, 1));
  const Interval r = abs_pow(Interval(-2, -1), 1.852);
  CHECK(r.lo == 1.0);
  CHECK(r.contains(3.6100029098497200));
  CHECK(r.hi - 3.6100029098497200 < 1e-14);
  // fractional exponents below one arise from derivative terms
  const Interval s = abs_pow(Interval(-4, 9), 0.5);
  CHECK(s.lo == 0.0);
  CHECK(s.contains(3.0));
}

TEST_CASE("directed rounding brackets the exact result") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20000; ++i) {
    const double a = random_double(rng), b = random_double(rng);
    const Quad qa(a), qb(b);
    const Quad sum = qa + qb;
    const Quad prod = qa * qb;
    CHECK(Quad(rounding::add_down(a, b)) <= sum);
    CHECK(Quad(rounding::add_up(a, b)) >= sum);
    CHECK(std::nextafter(rounding::add_down(a, b), HUGE_VAL) >= rounding::add_up(a, b));
    CHECK(Quad(rounding::sub_down(a, b)) <= qa - qb);
    CHECK(Quad(rounding::sub_up(a, b)) >= qa - qb);
    CHECK(Quad(rounding::mul_down(a, b)) <= prod);
    CHECK(Quad(rounding::mul_up(a, b)) >= prod);
    CHECK(std::nextafter(rounding::mul_down(a, b), HUGE_VAL) >= rounding::mul_up(a, b));
    const double x = std::abs(a);
    const Quad root = boost::multiprecision::sqrt(Quad(x));
    CHECK(Quad(rounding::sqrt_down(x)) <= root);
    CHECK(Quad(rounding::sqrt_up(x)) >= root);
    const double p = std::abs(b) > 8 ? 2.59 : std::abs(b);
    const Quad pw = boost::multiprecision::pow(Quad(x), Quad(p));
    CHECK(Quad(rounding::pow_down(x, p)) <= pw);
    CHECK(Quad(rounding::pow_up(x, p)) >= pw);
  }
  // exact operations stay exact
  CHECK(rounding::add_down(0.5, 0.25) == 0.75);
  CHECK(rounding::add_up(0.5, 0.25) == 0.75);
  CHECK(rounding::mul_down(3.0, 7.0) == 21.0);
  CHECK(rounding::mul_up(3.0, 7.0) == 21.0);
  CHECK(rounding::sqrt_up(16.0) == 4.0);
  // inexact ones do not
  CHECK(rounding::add_down(0.1, 0.2) < rounding::add_up(0.1, 0.2));
}

TEST_CASE("rounding survives underflow and overflow") {
  CHECK(rounding::mul_down(1e-200, 1e-200) < 0.0);
  CHECK(rounding::mul_up(1e-200, 1e-200) > 0.0);
  CHECK(rounding::mul_down(-1e-200, 1e-200) < 0.0);
  CHECK(rounding::mul_up(-1e-200, 1e-200) >= 0.0);
  CHECK(rounding::mul_down(1e200, 1e200) == std::numeric_limits<double>::max());
  CHECK(std::isinf(rounding::mul_up(1e200, 1e200)));
  CHECK(Quad(rounding::mul_down(3e-160, 7e-160)) <= Quad(3e-160) * Quad(7e-160));
  CHECK(Quad(rounding::mul_up(3e-160, 7e-160)) >= Quad(3e-160) * Quad(7e-160));
}

TEST_CASE("interval operations are inclusion isotonic") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double a0 = random_double(rng, -5, 5), a1 = random_double(rng, -5, 5);
    const double b0 = random_double(rng, -5, 5), b1 = random_double(rng, -5, 5);
    const Interval a(std::min(a0, a1), std::max(a0, a1));
    const Interval b(std::min(b0, b1), std::max(b0, b1));
    const double x = a.lo + u(rng) * a.width();
    const double y = b.lo + u(rng) * b.width();
    CHECK((a + b).contains(x + y));
    CHECK((a - b).contains(x - y));
    CHECK((a * b).contains(x * y));
    CHECK(sqr(a).contains(x * x));
    CHECK(abs_pow(a, 1.852).contains(std::pow(std::abs(x), 1.852)));
    CHECK(abs_pow(a, 0.852).contains(std::pow(std::abs(x), 0.852)));
    CHECK(max(a, b).contains(std::max(x, y)));
  }
}

TEST_CASE("jacobian entry enclosures") {
  NetworkDescription d;
  d.headloss = HeadlossFormula::DarcyWeisbach;
  d.junctions = {{"A", 0, 0}, {"B", 0, 0}};
  d.pipes = {{"P", "A", "B", 1.0, 2.0}};
  d.pumps = {{"M", "A", "B", 393.7008, 3.746e-6, 2.59, 1.0}};
  const Network net(d);
  auto e = jac_entry_bounds(net, std::vector<Interval>{{1, 2}, {100, 922.5}});
  CHECK(e[0] == Interval(2, 4));
  CHECK(e[1].contains(0.014684783130902861));
  CHECK(e[1].contains(0.5025324065273786));
  CHECK(e[1].lo > 0.0146847831309);
  CHECK(e[1].hi < 0.5025324065274);
  e = jac_entry_bounds(net, std::vector<Interval>{{-1, 2}, {100, 922.5}});
  CHECK(e[0] == Interval(0, 4));
  CHECK_THROWS(jac_entry_bounds(net, std::vector<Interval>{{-1, 2}, {0, 922.5}}));
}

TEST_CASE("jacobian enclosures contain pointwise derivatives on random sub-boxes") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& e : fixtures::all()) {
    const auto fx = fixtures::load(e);
    CAPTURE(fx.name);
    const std::size_t n = fx.net.link_count();
    for (int t = 0; t < 10000 / 6; ++t) {
      Box box(n);
      std::vector<double> q(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& b = fx.box.bounds[i];
        double x0 = b.lo + u(rng) * b.width(), x1 = b.lo + u(rng) * b.width();
        if (x0 > x1) std::swap(x0, x1);
        box[i] = Interval(x0, x1);
        q[i] = x0 + u(rng) * (x1 - x0);
      }
      const auto enc = jac_entry_bounds(fx.net, box);
      const auto jac = eval_jacobian_diag(fx.net, split_flows(fx.net, q));
      for (std::size_t i = 0; i < n; ++i) CHECK(enc[i].contains(jac[i]));
    }
  }
}
