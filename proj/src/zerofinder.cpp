#include "resonance/zerofinder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <omp.h>

#include "parallel.hpp"
#include "resonance/errors.hpp"

namespace resonance {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Newton gives up after this many iterations without a smaller |Z|.
constexpr int kStallIterations = 8;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

int real_sign(const ScaledComplex& z) {
  if (z.is_zero()) return 0;
  return std::cos(z.phase) > 0.0 ? 1 : -1;
}

bool before(const Resonance& x, const Resonance& y) {
  if (x.s.real() != y.s.real()) return x.s.real() > y.s.real();
  return x.s.imag() < y.s.imag();
}

}  // namespace

ZetaFunction zeta_function(const StaticParts& parts) {
  return [p = &parts](cplx s) { return zeta(*p, s); };
}

double scale_free_residual(const ZetaFunction& zeta, cplx s, double radius) {
  const ScaledComplex center = zeta(s);
  if (center.is_zero()) return 0.0;
  double reference = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    const cplx z = s + std::polar(radius, 0.5 * std::numbers::pi * k);
    reference = std::max(reference, zeta(z).log_modulus);
  }
  return std::exp(center.log_modulus - reference);
}

NewtonOutcome newton_refine(const ZetaFunction& zeta, cplx seed, const NewtonOptions& options,
                            const SearchWindow& window) {
  NewtonOutcome out;
  cplx s = seed;
  cplx best = s;
  double best_log = std::numeric_limits<double>::infinity();
  int since_best = 0;

  auto accept = [&](cplx at) {
    const double residual = scale_free_residual(zeta, at, options.residual_radius);
    if (!(residual < options.zero_tol)) return false;
    out.resonance = Resonance{at, residual, std::nullopt, false, seed};
    out.divergence = Divergence::none;
    return true;
  };

  for (int it = 1; it <= options.max_iter; ++it) {
    out.iterations = it;
    const ScaledComplex z0 = zeta(s);
    if (z0.is_zero()) {
      out.resonance = Resonance{s, 0.0, std::nullopt, false, seed};
      return out;
    }
    if (z0.log_modulus < best_log) {
      best_log = z0.log_modulus;
      best = s;
      since_best = 0;
    } else if (++since_best >= kStallIterations) {
      break;
    }

    const double h = options.fd_step * (1.0 + std::abs(s));
    const cplx plus = zeta(s + h).scaled(z0.log_modulus);
    const cplx minus = zeta(s - h).scaled(z0.log_modulus);
    const cplx step = z0.scaled(z0.log_modulus) * (2.0 * h) / (plus - minus);
    if (!finite(step)) {
      out.divergence = Divergence::not_finite;
      return out;
    }
    s -= step;
    if (!finite(s)) {
      out.divergence = Divergence::not_finite;
      return out;
    }
    if (!window.contains(s, options.window_margin)) {
      out.divergence = Divergence::left_window;
      return out;
    }
    if (std::abs(step) < options.step_tol && accept(s)) return out;
  }

  // Steps stalled or ran out: the best iterate may still sit at the rounding floor.
  const ScaledComplex last = zeta(s);
  if (last.log_modulus < best_log) best = s;
  if (accept(best)) return out;
  out.divergence = Divergence::max_iter;
  return out;
}

std::vector<Resonance> dedup(std::vector<Resonance> zeros, double tol) {
  std::vector<Resonance> kept;
  for (const Resonance& z : zeros) {
    auto near = std::find_if(kept.begin(), kept.end(), [&](const Resonance& k) {
      return std::abs(k.s - z.s) < tol * (1.0 + std::abs(z.s));
    });
    if (near == kept.end()) {
      kept.push_back(z);
    } else if (z.residual < near->residual) {
      *near = z;
    }
  }
  std::sort(kept.begin(), kept.end(), before);
  return kept;
}

std::vector<Resonance> scan_line(const ZetaFunction& zeta, double c, double im_min, double im_max,
                                 double spacing, const SearchWindow& window,
                                 const NewtonOptions& options, double dedup_tol) {
  if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidParameter, "seed spacing must be positive");
  const auto first = static_cast<long>(std::ceil(im_min / spacing));
  const auto last = static_cast<long>(std::floor(im_max / spacing));
  if (last < first) return {};

  const auto count = static_cast<std::size_t>(last - first + 1);
  std::vector<NewtonOutcome> outcomes(count);
  FirstError failure;
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
    const cplx seed(c, static_cast<double>(first + i) * spacing);
    failure.run([&] {
      outcomes[static_cast<std::size_t>(i)] = newton_refine(zeta, seed, options, window);
    });
  }
  failure.rethrow();

  std::vector<Resonance> found;
  for (const auto& outcome : outcomes) {
    if (outcome.resonance && window.contains(outcome.resonance->s)) {
      found.push_back(*outcome.resonance);
    }
  }
  return dedup(std::move(found), dedup_tol);
}

int multiplicity(const ZetaFunction& zeta, cplx s0, double radius, int points) {
  if (!(radius > 0.0) || points < 3) {
    throw Error(ErrorCode::InvalidParameter, "winding needs radius > 0 and at least 3 points");
  }
  std::vector<double> phase(static_cast<std::size_t>(points));
  FirstError failure;
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (int k = 0; k < points; ++k) {
    failure.run([&] {
      const ScaledComplex z = zeta(s0 + std::polar(radius, kTwoPi * k / points));
      phase[static_cast<std::size_t>(k)] =
          z.is_zero() ? std::numeric_limits<double>::quiet_NaN() : z.phase;
    });
  }
  failure.rethrow();
  double total = 0.0;
  for (std::size_t k = 0; k < phase.size(); ++k) {
    total += wrap_phase(phase[(k + 1) % phase.size()] - phase[k]);
  }
  const double winding = total / kTwoPi;
  const double nearest = std::round(winding);
  if (!(std::abs(winding - nearest) <= 0.2)) {
    std::ostringstream msg;
    msg << "winding " << winding << " around " << s0 << " with radius " << radius
        << "; increase points or shrink the radius";
    throw Error(ErrorCode::AmbiguousWinding, msg.str());
  }
  return static_cast<int>(nearest);
}

cplx zero_centroid(const ZetaFunction& zeta, cplx center, double radius, int points,
                   int winding) {
  if (winding < 1) return center;
  const auto n = static_cast<std::size_t>(points);
  std::vector<ScaledComplex> values(n);
  FirstError failure;
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (int k = 0; k < points; ++k) {
    failure.run([&] {
      values[static_cast<std::size_t>(k)] = zeta(center + std::polar(radius, kTwoPi * k / points));
    });
  }
  failure.rethrow();
  // log Z - i winding theta is periodic on the circle; its e^{-i theta}
  // coefficient is -sum(z_k - center)/radius.
  cplx coefficient = 0.0;
  double phase = values[0].phase;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) phase += wrap_phase(values[k].phase - values[k - 1].phase);
    const double theta = kTwoPi * static_cast<double>(k) / points;
    const cplx log_z(values[k].log_modulus, phase - winding * theta);
    coefficient += log_z * std::polar(1.0, theta);
  }
  coefficient /= static_cast<double>(points);
  return center - radius * coefficient / static_cast<double>(winding);
}

std::optional<double> largest_real_zero(const ZetaFunction& zeta, double lo, double hi,
                                        double step, double tol) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::InvalidParameter, "largest_real_zero needs hi > lo and step > 0");
  }
  double upper = hi;
  int upper_sign = real_sign(zeta(upper));
  if (upper_sign == 0) return upper;
  for (double x = hi - step; x >= lo; x -= step) {
    const int sign = real_sign(zeta(x));
    if (sign == 0) return x;
    if (sign != upper_sign) {
      double a = x;
      double b = upper;
      while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const int m = real_sign(zeta(mid));
        if (m == 0) return mid;
        (m == sign ? a : b) = mid;
      }
      return 0.5 * (a + b);
    }
    upper = x;
    upper_sign = sign;
  }
  return std::nullopt;
}

ResonanceSet find_resonances(const StaticParts& parts, const SearchOptions& options) {
  if (!options.window.valid()) throw Error(ErrorCode::InvalidParameter, "empty search window");
  const ZetaFunction zeta = zeta_function(parts);

  std::vector<double> lines = options.seed_re;
  if (lines.empty()) {
    // The critical exponent of a Schottky surface lies in (0, 1).
    const auto delta = largest_real_zero(zeta, std::max(options.window.re_min, -1.0), 1.5);
    lines.push_back(delta.value_or(1.0) + 0.1);
  }

  std::vector<Resonance> zeros;
  for (double c : lines) {
    auto found = scan_line(zeta, c, options.window.im_min, options.window.im_max,
                           options.seed_spacing, options.window, options.newton,
                           options.dedup_tol);
    zeros.insert(zeros.end(), found.begin(), found.end());
  }
  zeros = dedup(std::move(zeros), options.dedup_tol);

  if (options.multiplicity) {
    std::vector<Resonance> refined = zeros;
    FirstError failure;
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(zeros.size()); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < zeros.size(); ++j) {
        if (j != idx) nearest = std::min(nearest, std::abs(zeros[j].s - zeros[idx].s));
      }
      const double radius = std::min(options.multiplicity_radius, 0.4 * nearest);
      Resonance& r = refined[idx];
      failure.run([&] {
        try {
          const int m = multiplicity(zeta, r.s, radius, options.multiplicity_points);
          r.multiplicity = m;
          if (m >= 2) {
            const cplx centroid = zero_centroid(zeta, r.s, radius, options.multiplicity_points, m);
            if (std::abs(centroid - r.s) < 0.5 * radius) {
              r.s = centroid;
              r.residual = scale_free_residual(zeta, r.s, options.newton.residual_radius);
            }
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::AmbiguousWinding) throw;
        }
      });
    }
    failure.rethrow();
    zeros = dedup(std::move(refined), options.dedup_tol);
  }

  for (Resonance& r : zeros) {
    const double k = std::round(r.s.real());
    r.topological = k <= 0.0 && std::abs(r.s - cplx(k, 0.0)) < options.topological_tol;
  }

  ResonanceSet out;
  out.label = parts.surface.label();
  out.order = parts.order;
  out.level = parts.level;
  out.window = options.window;
  out.resonances = std::move(zeros);
  return out;
}

ResonanceSet find_resonances(const SchottkyData& data, int order, int level,
                             const SearchOptions& options, const TransferOptions& transfer) {
  const StaticParts parts = lparts(data, order, level, transfer);
  return find_resonances(parts, options);
}

}  // namespace resonance
