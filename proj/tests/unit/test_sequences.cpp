#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

#include "wdnlip/errors.hpp"
#include "wdnlip/sequences.hpp"

using namespace wdnlip;

namespace {

std::uint32_t scaled(double x) { return static_cast<std::uint32_t>(std::ldexp(x, 32)); }

// Largest absolute deviation between point counts and expected counts over
// the cells of a k x k grid, as a fraction of n.
double cell_discrepancy(const std::vector<std::vector<double>>& pts, int k) {
  std::vector<int> count(static_cast<std::size_t>(k * k), 0);
  for (const auto& p : pts) {
    const int i = static_cast<int>(p[0] * k), j = static_cast<int>(p[1] * k);
    ++count[static_cast<std::size_t>(i * k + j)];
  }
  const double expected = static_cast<double>(pts.size()) / (k * k);
  double worst = 0.0;
  for (int c : count) worst = std::max(worst, std::abs(c - expected));
  return worst / static_cast<double>(pts.size());
}

}  // namespace

TEST_CASE("primes and radical inverse") {
  CHECK(first_primes(8) == std::vector<unsigned>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(radical_inverse(1, 2) == 0.5);
  CHECK(radical_inverse(6, 2) == 0.375);
  CHECK(radical_inverse(5, 3) == doctest::Approx(7.0 / 9.0));
  CHECK(radical_inverse(0, 5) == 0.0);
}

TEST_CASE("halton first points") {
  const auto p = halton(2, 3);
  CHECK(p[0] == std::vector<double>{0.5, 1.0 / 3.0});
  CHECK(p[1][0] == 0.25);
  CHECK(p[1][1] == doctest::Approx(2.0 / 3.0));
  CHECK(p[2][0] == 0.75);
  CHECK(p[2][1] == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("halton first coordinate fills dyadic cells") {
  const auto p = halton(1, 1023);
  for (int m = 1; m <= 10; ++m) {
    const std::size_t n = (std::size_t{1} << m) - 1;
    std::set<std::size_t> cells;
    for (std::size_t i = 0; i < n; ++i) cells.insert(static_cast<std::size_t>(std::ldexp(p[i][0], m)));
    CHECK(cells.size() == n);
  }
}

TEST_CASE("halton is more even than random points") {
  const auto h = halton(2, 4096);
  const auto r = random_points(2, 4096, 3);
  CHECK(cell_discrepancy(h, 64) < cell_discrepancy(r, 64));
}

TEST_CASE("sobol first points") {
  const auto p = sobol(1, 3);
  CHECK(p[0][0] == 0.5);
  CHECK(p[1][0] == 0.75);
  CHECK(p[2][0] == 0.25);
  const auto first = sobol(40, 1);
  for (double x : first[0]) CHECK(x == 0.5);
}

TEST_CASE("sobol matches reference integers") {
  const std::vector<std::vector<std::uint32_t>> ref = {
      {2147483648u, 2147483648u, 2147483648u, 2147483648u, 2147483648u, 2147483648u, 2147483648u, 2147483648u},
      {3221225472u, 1073741824u, 1073741824u, 1073741824u, 3221225472u, 3221225472u, 1073741824u, 3221225472u},
      {1073741824u, 3221225472u, 3221225472u, 3221225472u, 1073741824u, 1073741824u, 3221225472u, 1073741824u},
      {1610612736u, 1610612736u, 2684354560u, 3758096384u, 1610612736u, 536870912u, 1610612736u, 3758096384u},
      {3758096384u, 3758096384u, 536870912u, 1610612736u, 3758096384u, 2684354560u, 3758096384u, 1610612736u},
      {2684354560u, 536870912u, 3758096384u, 2684354560u, 2684354560u, 3758096384u, 536870912u, 536870912u},
      {536870912u, 2684354560u, 1610612736u, 536870912u, 536870912u, 1610612736u, 2684354560u, 2684354560u},
      {805306368u, 1342177280u, 4026531840u, 1879048192u, 2415919104u, 1342177280u, 1879048192u, 4026531840u},
      {2952790016u, 3489660928u, 1879048192u, 4026531840u, 268435456u, 3489660928u, 4026531840u, 1879048192u},
      {4026531840u, 268435456u, 2952790016u, 805306368u, 1342177280u, 2415919104u, 805306368u, 805306368u},
      {1879048192u, 2415919104u, 805306368u, 2952790016u, 3489660928u, 268435456u, 2952790016u, 2952790016u},
      {1342177280u, 805306368u, 1342177280u, 2415919104u, 4026531840u, 1879048192u, 268435456u, 268435456u},
      {3489660928u, 2952790016u, 3489660928u, 268435456u, 1879048192u, 4026531840u, 2415919104u, 2415919104u},
      {2415919104u, 1879048192u, 268435456u, 3489660928u, 805306368u, 2952790016u, 1342177280u, 3489660928u},
      {268435456u, 4026531840u, 2415919104u, 1342177280u, 2952790016u, 805306368u, 3489660928u, 1342177280u},
      {402653184u, 2013265920u, 2013265920u, 2818572288u, 1207959552u, 4160749568u, 2281701376u, 3623878656u},
  };
  const auto p = sobol(8, ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    for (std::size_t k = 0; k < 8; ++k) CHECK(scaled(p[i][k]) == ref[i][k]);
  }

  const auto far = sobol(1024, 4);
  const std::vector<std::vector<std::uint32_t>> tail = {
      {2147483648u, 2147483648u, 2147483648u, 2147483648u, 2147483648u},
      {1073741824u, 3221225472u, 3221225472u, 1073741824u, 3221225472u},
      {3221225472u, 1073741824u, 1073741824u, 3221225472u, 1073741824u},
      {3758096384u, 2684354560u, 1610612736u, 3758096384u, 3758096384u},
  };
  for (std::size_t i = 0; i < tail.size(); ++i) {
    for (std::size_t k = 0; k < 5; ++k) CHECK(scaled(far[i][1019 + k]) == tail[i][k]);
  }

  const auto deep = sobol(3, 1000);
  CHECK(scaled(deep[999][0]) == 943718400u);
  CHECK(scaled(deep[999][1]) == 415236096u);
  CHECK(scaled(deep[999][2]) == 2227175424u);
}

TEST_CASE("sobol prefixes with the origin form digital nets") {
  // with the origin added, the first 2^m points put one point in each
  // dyadic cell of side 2^-m in every coordinate
  const auto p = sobol(6, 1023);
  for (int m = 1; m <= 10; ++m) {
    const std::size_t n = std::size_t{1} << m;
    for (std::size_t k = 0; k < 6; ++k) {
      std::set<std::size_t> cells{0};
      for (std::size_t i = 0; i + 1 < n; ++i) cells.insert(static_cast<std::size_t>(std::ldexp(p[i][k], m)));
      CHECK(cells.size() == n);
    }
  }
}

TEST_CASE("sobol dimension limit") {
  CHECK(sobol_max_dimension() == 1024);
  CHECK_NOTHROW(SobolSequence(1024));
  try {
    SobolSequence s(1025);
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooLarge);
  }
}

TEST_CASE("chunked generation matches one pass") {
  for (auto kind : {SamplerKind::Random, SamplerKind::Halton, SamplerKind::Sobol}) {
    auto a = make_sequence(kind, 5, 7);
    auto b = make_sequence(kind, 5, 7);
    std::vector<double> whole, parts;
    a->next(300, whole);
    b->next(1, parts);
    b->next(99, parts);
    b->next(200, parts);
    CHECK(whole == parts);
  }
}

TEST_CASE("random points") {
  CHECK(random_points(3, 100, 42) == random_points(3, 100, 42));
  CHECK(random_points(3, 100, 42) != random_points(3, 100, 43));
  const auto p = random_points(1, 100000, 1);
  double sum = 0.0, lo = 1.0, hi = 0.0;
  for (const auto& x : p) {
    lo = std::min(lo, x[0]);
    hi = std::max(hi, x[0]);
    sum += x[0];
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(std::abs(sum / 1e5 - 0.5) < 0.01);
}

TEST_CASE("sampler names") {
  CHECK(parse_sampler("sobol") == SamplerKind::Sobol);
  CHECK(parse_sampler("halton") == SamplerKind::Halton);
  CHECK(parse_sampler("random") == SamplerKind::Random);
  CHECK(to_string(SamplerKind::Halton) == "halton");
  CHECK_THROWS(parse_sampler("latin"));
}
