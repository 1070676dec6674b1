#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "resonance/errors.hpp"
#include "resonance/orbit_oracle.hpp"
#include "resonance/zerofinder.hpp"

using namespace resonance;

namespace {

constexpr double kPi = std::numbers::pi;

// (s - a)^2 (s - b) as a ScaledComplex.
ZetaFunction cubic(cplx a, cplx b) {
  return [a, b](cplx s) { return ScaledComplex::from((s - a) * (s - a) * (s - b)); };
}

// Independent bisection on a real function.
double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

bool has_zero_near(const std::vector<Resonance>& zeros, cplx s, double tol) {
  for (const auto& r : zeros) {
    if (std::abs(r.s - s) < tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("Newton on a synthetic cubic") {
  const auto z = cubic(cplx(0.3, 1.0), cplx(-0.5, -2.0));
  const SearchWindow window{-3, 3, -5, 5};
  const NewtonOptions options;
  const auto simple = newton_refine(z, cplx(-0.4, -1.8), options, window);
  REQUIRE(simple.resonance);
  CHECK(std::abs(simple.resonance->s - cplx(-0.5, -2.0)) < 1e-10);
  const auto dbl = newton_refine(z, cplx(0.2, 1.1), options, window);
  REQUIRE(dbl.resonance);
  CHECK(std::abs(dbl.resonance->s - cplx(0.3, 1.0)) < 1e-6);

  CHECK(multiplicity(z, cplx(0.3, 1.0), 0.1, 64) == 2);
  CHECK(multiplicity(z, cplx(-0.5, -2.0), 0.1, 64) == 1);
  CHECK(multiplicity(z, cplx(2.0, 0.0), 0.1, 64) == 0);
  CHECK(multiplicity(z, cplx(0.0, 0.0), 10.0, 256) == 3);
  const cplx centroid = zero_centroid(z, cplx(0.32, 0.97), 0.2, 64, 2);
  CHECK(std::abs(centroid - cplx(0.3, 1.0)) < 1e-12);

  // A sample landing on a zero leaves the phase undefined.
  const ZetaFunction vanishing = [](cplx s) {
    return s.real() < -0.5 ? ScaledComplex::zero() : ScaledComplex::from(s);
  };
  CHECK_THROWS_AS(multiplicity(vanishing, cplx(0.0, 0.0), 1.0, 4), Error);
  try {
    multiplicity(vanishing, cplx(0.0, 0.0), 1.0, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousWinding);
  }
}

TEST_CASE("scale-free residual ignores the overall scale") {
  const auto z = cubic(cplx(0.3, 1.0), cplx(-0.5, -2.0));
  const ZetaFunction scaled = [&](cplx s) {
    auto v = z(s);
    v.log_modulus += 500.0;
    return v;
  };
  const cplx s(0.31, 1.0);
  CHECK(scale_free_residual(z, s, 0.01) ==
        doctest::Approx(scale_free_residual(scaled, s, 0.01)).epsilon(1e-12));
  CHECK(scale_free_residual(z, cplx(0.3, 1.0), 0.01) == 0.0);
}

TEST_CASE("dedup") {
  std::vector<Resonance> zeros;
  zeros.push_back({cplx(0.1, 1.0), 1e-12, {}, false, {}});
  zeros.push_back({cplx(0.1, 1.0 + 1e-9), 1e-14, {}, false, {}});
  zeros.push_back({cplx(0.5, 0.0), 1e-13, {}, false, {}});
  zeros.push_back({cplx(0.1, -1.0), 1e-13, {}, false, {}});
  const auto once = dedup(zeros, 1e-6);
  REQUIRE(once.size() == 3);
  CHECK(once[0].s == cplx(0.5, 0.0));
  CHECK(once[1].s == cplx(0.1, -1.0));
  CHECK(once[2].residual == 1e-14);
  const auto twice = dedup(once, 1e-6);
  REQUIRE(twice.size() == once.size());
  for (std::size_t i = 0; i < once.size(); ++i) CHECK(twice[i].s == once[i].s);
}

TEST_CASE("cylinder: Newton, scan line and multiplicity") {
  const auto cyl = hyperbolic_cylinder(4.0);
  const double step = 2.0 * kPi / cyl.generator(1).translation_length();
  const auto parts = lparts(cyl, 16, 0);
  const auto z = zeta_function(parts);
  const SearchWindow window{-2.5, 1.0, -6.5, 6.5};
  const NewtonOptions options;

  const auto origin = newton_refine(z, cplx(0.1, 0.1), options, window);
  REQUIRE(origin.resonance);
  CHECK(std::abs(origin.resonance->s) < 1e-6);
  const auto first = newton_refine(z, cplx(0.2, 1.5), options, window);
  REQUIRE(first.resonance);
  CHECK(std::abs(first.resonance->s - cplx(0.0, step)) < 1e-6);

  const auto far = newton_refine(z, cplx(30.0, 0.5), options, window);
  CHECK_FALSE(far.resonance);
  CHECK(far.divergence != Divergence::none);

  const auto line = scan_line(z, 0.5, -6.5, 6.5, 0.1, window, options, 1e-6);
  for (int m = -4; m <= 4; ++m) CHECK(has_zero_near(line, cplx(0.0, m * step), 1e-6));
  for (const auto& r : line) CHECK(window.contains(r.s));

  CHECK(multiplicity(z, cplx(0.0, step), 0.3, 64) == 2);
  CHECK(std::abs(zero_centroid(z, cplx(0.01, step + 0.02), 0.3, 64, 2) - cplx(0.0, step)) < 1e-10);
}

TEST_CASE("cylinder lattice from three seed lines") {
  const auto cyl = hyperbolic_cylinder(4.0);
  const double step = 2.0 * kPi / cyl.generator(1).translation_length();
  SearchOptions options;
  options.window = {-2.5, 1.0, -6.5, 6.5};
  options.seed_re = {0.5, -0.5, -2.3};
  options.seed_spacing = 0.1;
  const auto set = find_resonances(cyl, 16, 0, options);
  int expected = 0;
  for (int k = 0; k <= 2; ++k) {
    for (int m = -4; m <= 4; ++m) {
      const cplx s(-k, m * step);
      ++expected;
      bool found = false;
      for (const auto& r : set.resonances) {
        if (std::abs(r.s - s) < 1e-6) {
          found = true;
          CHECK(r.multiplicity == 2);
          CHECK(r.topological == (m == 0));
        }
      }
      CHECK(found);
    }
  }
  CHECK(set.resonances.size() == static_cast<std::size_t>(expected));
  for (std::size_t i = 1; i < set.resonances.size(); ++i) {
    const auto& a = set.resonances[i - 1].s;
    const auto& b = set.resonances[i].s;
    CHECK((a.real() > b.real() || (a.real() == b.real() && a.imag() < b.imag())));
  }
}

TEST_CASE("critical exponent of X(10,10,10)") {
  const auto data = three_funnel(10, 10, 10);
  const auto parts = lparts(data, 16, 1);
  const auto delta = largest_real_zero(zeta_function(parts), -1.0, 1.5);
  REQUIRE(delta);
  const PeriodicOrbitExpansion poe(data, 12);
  const double reference = bisect([&](double s) { return poe.zeta(s).real(); }, 0.01, 0.5);
  CHECK(*delta == doctest::Approx(reference).epsilon(1e-8));
  CHECK(*delta > 0.0);
  CHECK(*delta < 0.5);
}

TEST_CASE("resonance set of X(6,6,6): conjugate pairs and the half-plane bound") {
  const auto data = three_funnel(6, 6, 6);
  const auto parts = lparts(data, 12, 1);
  const auto delta = largest_real_zero(zeta_function(parts), -1.0, 1.5);
  REQUIRE(delta);
  SearchOptions options;
  options.window = {-0.5, 1.0, -8.0, 8.0};
  options.seed_spacing = 0.1;
  const auto set = find_resonances(parts, options);
  REQUIRE_FALSE(set.resonances.empty());
  CHECK(has_zero_near(set.resonances, *delta, 1e-8));
  for (const auto& r : set.resonances) {
    CHECK(r.s.real() <= *delta + 1e-8);
    if (std::abs(r.s.imag()) < 7.5) CHECK(has_zero_near(set.resonances, std::conj(r.s), 1e-6));
  }
}

TEST_CASE("windows without zeros") {
  const auto cyl = hyperbolic_cylinder(4.0);
  const auto parts = lparts(cyl, 12, 0);
  SearchOptions options;
  options.window = {2.0, 3.0, -3.0, 3.0};
  options.seed_re = {2.5};
  options.seed_spacing = 0.25;
  CHECK(find_resonances(parts, options).resonances.empty());
  options.window = {1.0, 0.0, -3.0, 3.0};
  CHECK_THROWS_AS(find_resonances(parts, options), Error);
}
