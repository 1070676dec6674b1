#include "resonance/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "resonance/errors.hpp"

namespace resonance {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ad - bc without cancellation in the products.
double det2(double a, double b, double c, double d) {
  const double w = b * c;
  const double e = std::fma(-b, c, w);
  const double f = std::fma(a, d, -w);
  return f + e;
}

// |ad - bc - 1| within a few ulps of |ad| + |bc|.
bool unimodular(double a, double b, double c, double d, double det) {
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(a * d) + std::abs(b * c));
  return std::abs(det - 1.0) <= kUnimodularTolerance + slack;
}

}  // namespace

Interval::Interval(double c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(c - r) || !std::isfinite(c + r)) {
    std::ostringstream msg;
    msg << "interval needs finite endpoints and positive radius (center " << c << ", radius "
        << r << ")";
    throw Error(ErrorCode::InvalidParameter, msg.str());
  }
}

Interval Interval::from_endpoints(double lo, double hi) {
  if (hi < lo) std::swap(lo, hi);
  return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

double Interval::gap_to(const Interval& other) const {
  return std::abs(center - other.center) - radius - other.radius;
}

std::ostream& operator<<(std::ostream& os, const Interval& interval) {
  return os << "[" << interval.lo() << ", " << interval.hi() << "]";
}

MoebiusTransform::MoebiusTransform(double a, double b, double c, double d) {
  const double det = det2(a, b, c, d);
  if (!(det > 0.0) || !std::isfinite(det)) {
    std::ostringstream msg;
    msg << "Moebius matrix needs positive determinant, got " << det;
    throw Error(ErrorCode::InvalidParameter, msg.str());
  }
  const double scale = unimodular(a, b, c, d, det) ? 1.0 : 1.0 / std::sqrt(det);
  m_ = {a * scale, b * scale, c * scale, d * scale};
}

double MoebiusTransform::determinant() const { return det2(m_[0], m_[1], m_[2], m_[3]); }

double MoebiusTransform::apply(double x) const {
  const auto [a, b, c, d] = m_;
  if (std::isinf(x)) {
    return c == 0.0 ? kInfinity : a / c;
  }
  const double denom = c * x + d;
  if (denom == 0.0) return kInfinity;
  return (a * x + b) / denom;
}

double MoebiusTransform::derivative(double x) const {
  const double denom = m_[2] * x + m_[3];
  if (std::abs(denom) < kPoleTolerance) {
    std::ostringstream msg;
    msg << "|cx + d| = " << std::abs(denom) << " at x = " << x;
    throw Error(ErrorCode::PoleAtPoint, msg.str());
  }
  return determinant() / (denom * denom);
}

double MoebiusTransform::log_derivative(double x) const {
  const double denom = m_[2] * x + m_[3];
  if (std::abs(denom) < kPoleTolerance) {
    std::ostringstream msg;
    msg << "|cx + d| = " << std::abs(denom) << " at x = " << x;
    throw Error(ErrorCode::PoleAtPoint, msg.str());
  }
  return std::log(determinant()) - 2.0 * std::log(std::abs(denom));
}

double MoebiusTransform::translation_length() const {
  const double half_trace = 0.5 * std::abs(trace()) / std::sqrt(determinant());
  return half_trace > 1.0 ? 2.0 * std::acosh(half_trace) : 0.0;
}

bool operator==(const MoebiusTransform& g, const MoebiusTransform& h) {
  const auto& x = g.m_;
  const auto& y = h.m_;
  const bool same = x[0] == y[0] && x[1] == y[1] && x[2] == y[2] && x[3] == y[3];
  const bool negated = x[0] == -y[0] && x[1] == -y[1] && x[2] == -y[2] && x[3] == -y[3];
  return same || negated;
}

MoebiusTransform compose(const MoebiusTransform& g, const MoebiusTransform& h) {
  const auto& x = g.entries();
  const auto& y = h.entries();
  std::array<double, 4> m{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
  return MoebiusTransform(MoebiusTransform::Raw{}, m);
}

bool approx_equal(const MoebiusTransform& g, const MoebiusTransform& h, double tol) {
  const auto& x = g.entries();
  const auto& y = h.entries();
  bool same = true;
  bool negated = true;
  for (int i = 0; i < 4; ++i) {
    same = same && std::abs(x[i] - y[i]) <= tol;
    negated = negated && std::abs(x[i] + y[i]) <= tol;
  }
  return same || negated;
}

std::ostream& operator<<(std::ostream& os, const MoebiusTransform& g) {
  return os << "[[" << g.a() << ", " << g.b() << "], [" << g.c() << ", " << g.d() << "]]";
}

MoebiusTransform generator_S(double l, double a) {
  if (!(l > 0.0) || a == 0.0 || !std::isfinite(a)) {
    std::ostringstream msg;
    msg << "generator_S needs l > 0 and a != 0 (l = " << l << ", a = " << a << ")";
    throw Error(ErrorCode::InvalidParameter, msg.str());
  }
  const double ch = std::cosh(0.5 * l);
  const double sh = std::sinh(0.5 * l);
  return {ch, a * sh, sh / a, ch};
}

MoebiusTransform rotation(double psi) {
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  return {c, -s, s, c};
}

Interval isometric_disk(const MoebiusTransform& g) {
  if (std::abs(g.c()) < kPoleTolerance) {
    throw Error(ErrorCode::AffineGenerator,
                "isometric disk contains infinity; conjugate the generators first");
  }
  return {-g.d() / g.c(), 1.0 / std::abs(g.c())};
}

Interval map_interval(const MoebiusTransform& g, const Interval& interval) {
  if (g.c() != 0.0) {
    const double pole = -g.d() / g.c();
    if (interval.contains(pole)) {
      std::ostringstream msg;
      msg << "pole " << pole << " inside " << interval;
      throw Error(ErrorCode::PoleInsideInterval, msg.str());
    }
  }
  return Interval::from_endpoints(g.apply(interval.lo()), g.apply(interval.hi()));
}

}  // namespace resonance
