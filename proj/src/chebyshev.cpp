#include "resonance/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "resonance/errors.hpp"
#include "block_kernel.hpp"

namespace resonance {

ChebGrid::ChebGrid(int order) {
  if (order < 1) throw Error(ErrorCode::InvalidParameter, "Chebyshev order must be >= 1");
  // Exactly antisymmetric, so mirrored intervals give mirrored blocks.
  nodes_ = detail::chebyshev_nodes<double>(order);
}

std::vector<double> ChebGrid::nodes_on(const Interval& interval) const {
  std::vector<double> out(nodes_.size());
  for (std::size_t j = 0; j < nodes_.size(); ++j) out[j] = interval.from_unit(nodes_[j]);
  return out;
}

void chebyshev_values(double x, std::span<double> out) {
  detail::chebyshev_values(x, out.data(), out.size());
}

double chebyshev_kernel(int order, double x, double y) {
  std::vector<double> tx(static_cast<std::size_t>(order));
  std::vector<double> ty(static_cast<std::size_t>(order));
  chebyshev_values(x, tx);
  chebyshev_values(y, ty);
  double sum = 0.0;
  for (int k = order - 1; k >= 1; --k) sum += tx[k] * ty[k];
  return (1.0 + 2.0 * sum) / order;
}

Interpolated interpolate(std::span<const double> values, const Interval& interval, double x) {
  const int order = static_cast<int>(values.size());
  const ChebGrid grid(order);
  const double u = interval.to_unit(x);
  double value = 0.0;
  for (int j = 0; j < order; ++j) value += chebyshev_kernel(order, u, grid.node(j)) * values[j];
  return {value, !interval.contains(x)};
}

std::vector<double> chebyshev_coefficients(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> mu(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += std::cos(std::numbers::pi * k * (j + 0.5) / n) * values[j];
    }
    mu[k] = sum / n;
  }
  return mu;
}

std::vector<double> chebyshev_synthesis(std::span<const double> coefficients) {
  const std::size_t n = coefficients.size();
  std::vector<double> values(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = coefficients.empty() ? 0.0 : coefficients[0];
    for (std::size_t k = 1; k < n; ++k) {
      sum += 2.0 * coefficients[k] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
    }
    values[j] = sum;
  }
  return values;
}

LBlockResult lblock(int order, const Interval& source, const Interval& target,
                    const MoebiusTransform& g) {
  if (order < 1) throw Error(ErrorCode::InvalidParameter, "Chebyshev order must be >= 1");
  return detail::block_kernel<double>(order, {source.center, source.radius, 0.0},
                                      {target.center, target.radius, 0.0}, g, {}, g);
}

LBlockResult lblock(int order, const Chart& source, const Chart& target,
                    const MoebiusTransform& transition, std::span<const MoebiusTransform> lift,
                    const MoebiusTransform& g) {
  if (order < 1) throw Error(ErrorCode::InvalidParameter, "Chebyshev order must be >= 1");
  return detail::block_kernel<double>(order, source, target, transition, lift, g);
}

}  // namespace resonance
