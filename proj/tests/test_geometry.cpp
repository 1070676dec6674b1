#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "resonance/errors.hpp"
#include "resonance/geometry.hpp"

using namespace resonance;

namespace {

MoebiusTransform random_sl2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a * d - b * c > 0.1) return {a, b, c, d};
  }
}

}  // namespace

TEST_CASE("apply: identity, translation and fixed points of S(l,a)") {
  CHECK(MoebiusTransform::identity().apply(0.0) == 0.0);
  CHECK(MoebiusTransform(1, 1, 0, 1).apply(5.0) == doctest::Approx(6.0));
  for (double a : {0.5, 1.0, 2.0}) {
    const auto s = generator_S(4.0, a);
    CHECK(s.apply(a) == doctest::Approx(a).epsilon(1e-14));
    CHECK(s.apply(-a) == doctest::Approx(-a).epsilon(1e-14));
  }
}

TEST_CASE("apply: pole maps to infinity, infinity to a/c") {
  const MoebiusTransform g(2, 1, 1, 1);
  CHECK(std::isinf(g.apply(-1.0)));
  CHECK(g.apply(HUGE_VAL) == doctest::Approx(2.0));
}

TEST_CASE("derivative") {
  CHECK(MoebiusTransform::identity().derivative(3.0) == doctest::Approx(1.0));
  CHECK(MoebiusTransform(1, 1, 0, 1).derivative(-7.0) == doctest::Approx(1.0));
  const double c2 = std::cosh(2.0);
  CHECK(generator_S(4.0, 1.0).derivative(0.0) == doctest::Approx(1.0 / (c2 * c2)).epsilon(1e-14));
  CHECK(generator_S(4.0, 1.0).log_derivative(0.3) ==
        doctest::Approx(std::log(generator_S(4.0, 1.0).derivative(0.3))).epsilon(1e-14));
  CHECK_THROWS_AS(MoebiusTransform(1, 0, 1, 1).derivative(-1.0), Error);
}

TEST_CASE("constructor rejects nonpositive determinant and rescales others") {
  CHECK_THROWS_AS(MoebiusTransform(1, 2, 2, 1), Error);
  const MoebiusTransform g(2, 0, 0, 2);
  CHECK(g.determinant() == doctest::Approx(1.0));
  CHECK(g.apply(3.0) == doctest::Approx(3.0));
}

TEST_CASE("inverse of S(l,a) is S(l,-a)") {
  const auto s = generator_S(10.0, 0.5);
  CHECK(approx_equal(s.inverse(), generator_S(10.0, -0.5), 1e-9));
  CHECK(approx_equal(s * s.inverse(), MoebiusTransform::identity(), 1e-9));
  for (double a : {0.3, 1.0, 4.0}) {
    CHECK(generator_S(6.0, a).trace() == doctest::Approx(2.0 * std::cosh(3.0)).epsilon(1e-13));
  }
  CHECK(approx_equal(generator_S(1e-9, 1.0), MoebiusTransform::identity(), 1e-8));
}

TEST_CASE("translation length") {
  // Entries of size e^{l/2} pin the determinant only to about e^l eps.
  for (double l : {0.5, 4.0, 10.0, 20.0}) {
    const double tol = 1e-13 + 10.0 * std::exp(l) * 2.2e-16;
    CHECK(std::abs(generator_S(l, 0.7).translation_length() - l) < tol);
  }
  CHECK(rotation(0.3).translation_length() == 0.0);
}

TEST_CASE("rotations") {
  CHECK(approx_equal(rotation(0.0), MoebiusTransform::identity(), 1e-15));
  CHECK(approx_equal(rotation(0.4) * rotation(-0.4), MoebiusTransform::identity(), 1e-14));
  const auto g = generator_S(7.0, 1.0);
  const double psi = std::numbers::pi / 8.0;
  const auto h = rotation(psi) * g * rotation(-psi);
  CHECK(h.trace() == doctest::Approx(g.trace()).epsilon(1e-12));
}

TEST_CASE("isometric disk") {
  const auto disk = isometric_disk(generator_S(4.0, 1.0));
  CHECK(disk.center == doctest::Approx(-1.0 / std::tanh(2.0)).epsilon(1e-14));
  CHECK(disk.radius == doctest::Approx(1.0 / std::sinh(2.0)).epsilon(1e-14));
  const auto mirror = isometric_disk(generator_S(4.0, -1.0));
  CHECK(mirror.center == doctest::Approx(-disk.center).epsilon(1e-14));
  CHECK(mirror.radius == doctest::Approx(disk.radius).epsilon(1e-14));
  CHECK_THROWS_AS(isometric_disk(MoebiusTransform(1, 1, 0, 1)), Error);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_sl2(rng);
    CHECK(isometric_disk(g).radius == doctest::Approx(isometric_disk(g.inverse()).radius));
  }
}

TEST_CASE("map_interval") {
  const Interval unit(0.0, 1.0);
  const auto same = map_interval(MoebiusTransform::identity(), unit);
  CHECK(same.center == doctest::Approx(0.0));
  CHECK(same.radius == doctest::Approx(1.0));
  const auto shifted = map_interval(MoebiusTransform(1, 1, 0, 1), unit);
  CHECK(shifted.center == doctest::Approx(1.0));
  CHECK(shifted.radius == doctest::Approx(1.0));

  // S maps the isometric disk of S^{-1} strictly into itself.
  const auto s = generator_S(10.0, 1.0);
  const Interval i1 = isometric_disk(s.inverse());
  CHECK(i1.contains(map_interval(s, i1)));
  CHECK_THROWS_AS(map_interval(s.inverse(), i1), Error);
  CHECK_THROWS_AS(map_interval(MoebiusTransform(1, 0, 1, 1), Interval(-1.0, 0.5)), Error);
}

TEST_CASE("composition acts as g(h(x)) and obeys the chain rule") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_sl2(rng);
    const auto h = random_sl2(rng);
    const double x = u(rng);
    const double hx = h.apply(x);
    if (std::abs(h.c() * x + h.d()) < 1e-3 || std::abs(g.c() * hx + g.d()) < 1e-3) continue;
    const double direct = g.apply(hx);
    CHECK((g * h).apply(x) == doctest::Approx(direct).epsilon(1e-10));
    CHECK((g * h).derivative(x) ==
          doctest::Approx(g.derivative(hx) * h.derivative(x)).epsilon(1e-10));
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("chart coordinates agree with the affine coordinate") {
  const auto s = generator_S(4.0, 1.0);
  const Interval base(2.0, 0.5);
  const Interval image = map_interval(s, base);
  const double pole = s.inverse().apply(HUGE_VAL);
  const Chart chart{base.center, base.radius, -base.radius / (pole - base.center)};
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
    const double y = base.from_unit(x);
    CHECK(chart.to_unit(y) == doctest::Approx(image.to_unit(s.apply(y))).epsilon(1e-12));
    CHECK(chart.from_unit(chart.to_unit(y)) == doctest::Approx(y).epsilon(1e-14));
  }
}
