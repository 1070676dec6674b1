#pragma once

#include <array>
#include <iosfwd>

namespace resonance {

/// Pole tolerance for |cx + d| in derivative evaluations.
inline constexpr double kPoleTolerance = 1e-14;

/// Matrices with |det - 1| below this, plus the rounding level of ad and bc,
/// are taken as given; others are rescaled.
inline constexpr double kUnimodularTolerance = 1e-14;

/// A closed real interval stored as center and radius.
struct Interval {
  double center = 0.0;
  double radius = 1.0;

  Interval() = default;
  Interval(double c, double r);

  static Interval from_endpoints(double lo, double hi);

  double lo() const { return center - radius; }
  double hi() const { return center + radius; }

  bool contains(double x) const { return x >= lo() && x <= hi(); }
  /// True if `other` lies inside this interval with at least `margin` to spare.
  bool contains(const Interval& other, double margin = 0.0) const {
    return other.lo() >= lo() + margin && other.hi() <= hi() - margin;
  }
  /// Signed gap between the closures (negative when they overlap).
  double gap_to(const Interval& other) const;

  /// Affine map of [-1, 1] onto the interval.
  double from_unit(double x) const { return center + radius * x; }
  double to_unit(double y) const { return (y - center) / radius; }
};

std::ostream& operator<<(std::ostream& os, const Interval& interval);

/// Coordinates on a small interval I = T(base) for a Moebius map T, taken
/// relative to `base`: u = (y + t)/(1 + t y) with y the affine coordinate of
/// the preimage in `base`. With t = -r_base/(T^{-1}(inf) - c_base) this is
/// exactly the affine coordinate of I, but it never subtracts nearby points of I.
template <class Real>
struct BasicChart {
  Real center = 1;
  Real radius = 1;
  Real t = 0;

  Real to_unit(const Real& base_point) const {
    const Real y = (base_point - center) / radius;
    return (y + t) / (1 + t * y);
  }
  Real from_unit(const Real& u) const { return center + radius * ((u - t) / (1 - t * u)); }
};

using Chart = BasicChart<double>;

/// Real Moebius transformation x -> (ax + b)/(cx + d), held as an SL(2,R)
/// matrix. Equality is projective.
class MoebiusTransform {
 public:
  /// Rescales to unit determinant unless already unimodular up to rounding;
  /// throws InvalidParameter if ad - bc <= 0.
  MoebiusTransform(double a, double b, double c, double d);

  static MoebiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  const std::array<double, 4>& entries() const { return m_; }

  double trace() const { return m_[0] + m_[3]; }
  /// ad - bc with one rounding (fused multiply-add).
  double determinant() const;

  /// Exact adjugate, so g and g.inverse() are inverse maps without rounding.
  MoebiusTransform inverse() const { return {Raw{}, {m_[3], -m_[1], -m_[2], m_[0]}}; }

  /// Extended action on R u {inf}; infinity is represented by +/-HUGE_VAL.
  double apply(double x) const;
  /// g'(x) = det/(cx + d)^2; throws PoleAtPoint when |cx + d| < kPoleTolerance.
  double derivative(double x) const;
  double log_derivative(double x) const;

  /// 2 arccosh(|tr|/2); zero for elliptic or parabolic elements.
  double translation_length() const;

  friend bool operator==(const MoebiusTransform& g, const MoebiusTransform& h);

 private:
  struct Raw {};
  MoebiusTransform(Raw, const std::array<double, 4>& m) : m_(m) {}
  friend MoebiusTransform compose(const MoebiusTransform& g, const MoebiusTransform& h);

  std::array<double, 4> m_;
};

/// (ax + b)/(cx + d) evaluated in another floating type, without pole handling.
template <class Real>
Real act(const MoebiusTransform& g, const Real& x) {
  return (Real(g.a()) * x + Real(g.b())) / (Real(g.c()) * x + Real(g.d()));
}

/// Matrix product g*h, acting as x -> g(h(x)).
MoebiusTransform compose(const MoebiusTransform& g, const MoebiusTransform& h);
inline MoebiusTransform operator*(const MoebiusTransform& g, const MoebiusTransform& h) {
  return compose(g, h);
}

/// Entrywise comparison up to sign.
bool approx_equal(const MoebiusTransform& g, const MoebiusTransform& h, double tol);

std::ostream& operator<<(std::ostream& os, const MoebiusTransform& g);

/// S(l, a) = [[cosh(l/2), a sinh(l/2)], [sinh(l/2)/a, cosh(l/2)]].
MoebiusTransform generator_S(double l, double a);

/// R(psi) = [[cos psi, -sin psi], [sin psi, cos psi]].
MoebiusTransform rotation(double psi);

/// Real trace of the isometric disk {|cz + d| < 1}: center -d/c, radius 1/|c|.
/// Throws AffineGenerator when |c| < kPoleTolerance.
Interval isometric_disk(const MoebiusTransform& g);

/// Image of a pole-free interval under g, via its endpoint images.
/// Throws PoleInsideInterval if -d/c lies in the closed interval.
Interval map_interval(const MoebiusTransform& g, const Interval& interval);

}  // namespace resonance
