#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "resonance/geometry.hpp"

namespace resonance {

/// Gauss-Chebyshev nodes x_j = cos((2j - 1)pi / 2N), j = 1..N (stored 0-based).
class ChebGrid {
 public:
  explicit ChebGrid(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  double node(std::size_t j) const { return nodes_[j]; }

  /// Nodes mapped onto an interval: c + r x_j.
  std::vector<double> nodes_on(const Interval& interval) const;

 private:
  std::vector<double> nodes_;
};

/// T_0(x) .. T_{N-1}(x) by the three-term recurrence.
void chebyshev_values(double x, std::span<double> out);

/// K_N(x, y) = (1/N)[1 + 2 sum_{k=1}^{N-1} T_k(x) T_k(y)].
double chebyshev_kernel(int order, double x, double y);

struct Interpolated {
  double value;
  bool extrapolated;  // x outside the interval
};

/// Lagrange-Chebyshev interpolant of node samples on `interval`, evaluated at x.
Interpolated interpolate(std::span<const double> values, const Interval& interval, double x);

/// mu_k = (1/N) sum_j cos(pi k (j - 1/2) / N) v_j (DCT-II), k = 0..N-1.
std::vector<double> chebyshev_coefficients(std::span<const double> values);
/// v_j = mu_0 + 2 sum_k mu_k cos(pi k (j - 1/2) / N) (DCT-III).
std::vector<double> chebyshev_synthesis(std::span<const double> coefficients);

/// One N x N block of the discretized transfer operator, without the s-dependence.
template <class Real>
struct BasicBlock {
  int order = 0;
  std::vector<Real> f;      // g'(y_i) at the actual collocation points y_i of I_v
  std::vector<Real> log_f;  // log g'(y_i), used for f^s = exp(s log f)
  std::vector<Real> m;      // row-major, m[i*N + j] = K_N[(g.y_i - c_w)/r_w, x_j]

  const Real& m_at(std::size_t i, std::size_t j) const {
    return m[i * static_cast<std::size_t>(order) + j];
  }
};

using LBlockResult = BasicBlock<double>;

/// Tolerance, in units of r_w, for mapped collocation points outside I_w.
inline constexpr double kContainmentTolerance = 1e-12;

/// Builds the block for coefficient g acting from I_w (columns) to I_v (rows),
/// with y_i = c_v + r_v x_i. Throws ContainmentViolation if g sends a node of
/// I_v outside I_w, and NonpositiveDerivative if some g'(y_i) is not a finite
/// positive number.
LBlockResult lblock(int order, const Interval& source, const Interval& target,
                    const MoebiusTransform& g);

/// Same block with the collocation geometry read through charts: node x_i is
/// source.from_unit(x_i) in the source base interval, `transition` carries it
/// to the target base interval, and the maps in `lift` carry it to the actual
/// point y_i where g' is evaluated.
LBlockResult lblock(int order, const Chart& source, const Chart& target,
                    const MoebiusTransform& transition, std::span<const MoebiusTransform> lift,
                    const MoebiusTransform& g);

}  // namespace resonance
