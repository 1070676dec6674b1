#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "resonance/geometry.hpp"

namespace resonance {

/// Schottky data (q, I_k, S_k) for k in I_G = {-q, ..., -1, 1, ..., q}.
/// Only S_1..S_q are stored; S_{-k} is the exact matrix inverse.
class SchottkyData {
 public:
  /// `intervals` are given in I_G order [-q, ..., -1, 1, ..., q].
  SchottkyData(std::vector<MoebiusTransform> generators, std::vector<Interval> intervals,
               std::string label);

  /// Intervals taken from the isometric disks of the S_k and their inverses.
  static SchottkyData from_generators(std::vector<MoebiusTransform> generators,
                                      std::string label);

  int q() const { return static_cast<int>(generators_.size()); }
  int euler_characteristic() const { return 1 - q(); }
  const std::string& label() const { return label_; }

  MoebiusTransform generator(int k) const;
  const Interval& interval(int k) const { return intervals_[slot(k)]; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  /// Position of k in the I_G order.
  std::size_t slot(int k) const;
  /// I_G in the order [-q, ..., -1, 1, ..., q].
  std::vector<int> letters() const;

 private:
  std::vector<MoebiusTransform> generators_;
  std::vector<Interval> intervals_;
  std::string label_;
};

struct Violation {
  enum class Kind { Overlap, MappingNotContained, PoleInsideInterval };
  Kind kind;
  int first = 0;   // letter(s) involved
  int second = 0;
  double margin = 0.0;  // negative or below threshold
  std::string message;
};

inline constexpr double kValidationMargin = 1e-10;

/// Every violated invariant, with margins. Never throws.
std::vector<Violation> validate(const SchottkyData& data);

/// Throws OverlappingDisks listing the violations if `validate` is non-empty.
void require_valid(const SchottkyData& data);

/// Whether family constructors throw OverlappingDisks on invalid data.
enum class Validation { enforce, skip };

SchottkyData hyperbolic_cylinder(double length);

/// A(l1, l2, l3) = d - sqrt(d^2 - 1) with
/// d = (cosh(l1/2)cosh(l2/2) + cosh(l3/2)) / (sinh(l1/2)sinh(l2/2)).
double waist_function_A(double l1, double l2, double l3);

/// X(l1, l2, l3): S_1 = S(l1, 1), S_2 = S(l2, A(l1, l2, l3)).
SchottkyData three_funnel(double l1, double l2, double l3,
                          Validation validation = Validation::enforce);

/// Surface with n funnels built from generators S(l_k, a_k), k = 1..n-1.
/// Without `inner_lengths`, all widths must be equal and the inner l_k are
/// tuned until the waist pairs of `waist_length_pairs` agree.
SchottkyData n_funnel(std::span<const double> widths,
                      std::optional<std::vector<double>> inner_lengths = std::nullopt,
                      Validation validation = Validation::enforce);

/// For each inner generator k = 2..q-1: (length of S_k, length of S_{k-1} S_{k+1}^{-1}).
std::vector<std::pair<double, double>> waist_length_pairs(const SchottkyData& data);

/// Y(l1, l2, phi), conjugated by R(rotation_angle) so no disk contains infinity.
SchottkyData funneled_torus(double l1, double l2, double phi,
                            double rotation_angle = std::numbers::pi / 8.0,
                            Validation validation = Validation::enforce);

}  // namespace resonance
