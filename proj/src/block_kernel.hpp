#pragma once

// Collocation kernel shared by the double and extended-precision paths.

#include <cmath>
#include <sstream>
#include <span>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "resonance/chebyshev.hpp"
#include "resonance/errors.hpp"
#include "resonance/geometry.hpp"

namespace resonance::detail {

template <class Real>
std::vector<Real> chebyshev_nodes(int order) {
  const auto n = static_cast<std::size_t>(order);
  std::vector<Real> nodes(n);
  const Real pi = boost::math::constants::pi<Real>();
  for (std::size_t j = 0; j < n; ++j) {
    using std::cos;
    nodes[j] = cos(Real(2 * j + 1) * pi / Real(2 * order));
  }
  for (std::size_t j = 0; j < n / 2; ++j) nodes[n - 1 - j] = -nodes[j];
  if (n % 2 == 1) nodes[n / 2] = 0;
  return nodes;
}

template <class Real>
void chebyshev_values(const Real& x, Real* out, std::size_t count) {
  if (count == 0) return;
  out[0] = 1;
  if (count == 1) return;
  out[1] = x;
  for (std::size_t k = 2; k < count; ++k) out[k] = 2 * x * out[k - 1] - out[k - 2];
}

/// Block rows are the nodes of the source interval, read in `source` and
/// carried to actual points by `lift` (applied in order). `transition` maps
/// source base points to target base points.
template <class Real>
BasicBlock<Real> block_kernel(int order, const BasicChart<Real>& source,
                              const BasicChart<Real>& target, const MoebiusTransform& transition,
                              std::span<const MoebiusTransform> lift, const MoebiusTransform& g) {
  using std::abs;
  using std::log;
  const auto n = static_cast<std::size_t>(order);
  const auto nodes = chebyshev_nodes<Real>(order);

  std::vector<Real> t_nodes(n * n);
  for (std::size_t j = 0; j < n; ++j) chebyshev_values(nodes[j], &t_nodes[j * n], n);

  BasicBlock<Real> out;
  out.order = order;
  out.f.resize(n);
  out.log_f.resize(n);
  out.m.resize(n * n);

  // Stored entries have unit determinant only up to rounding.
  Real det;
  if constexpr (std::is_same_v<Real, double>) {
    det = g.determinant();
  } else {
    det = Real(g.a()) * Real(g.d()) - Real(g.b()) * Real(g.c());
  }
  std::vector<Real> t_mapped(n);
  const Real tolerance = 1 + Real(kContainmentTolerance);
  for (std::size_t i = 0; i < n; ++i) {
    const Real base_point = source.from_unit(nodes[i]);
    const Real u = target.to_unit(act(transition, base_point));
    Real y = base_point;
    for (const auto& map : lift) y = act(map, y);
    if (!(abs(u) <= tolerance)) {
      std::ostringstream msg;
      msg << "node " << static_cast<double>(y) << " maps to target coordinate "
          << static_cast<double>(u) << ", outside [-1, 1]";
      throw Error(ErrorCode::ContainmentViolation, msg.str());
    }
    const Real denom = Real(g.c()) * y + Real(g.d());
    const Real fi = det / (denom * denom);
    if (!(abs(denom) >= Real(kPoleTolerance)) || !(fi > 0) || !(fi < Real(HUGE_VAL))) {
      std::ostringstream msg;
      msg << "derivative " << static_cast<double>(fi) << " at " << static_cast<double>(y);
      throw Error(ErrorCode::NonpositiveDerivative, msg.str());
    }
    out.f[i] = fi;
    out.log_f[i] = log(det) - 2 * log(abs(denom));

    chebyshev_values(u, t_mapped.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
      const Real* tj = &t_nodes[j * n];
      Real sum = 0;
      for (std::size_t k = n - 1; k >= 1; --k) sum += t_mapped[k] * tj[k];
      out.m[i * n + j] = (1 + 2 * sum) / Real(order);
    }
  }
  return out;
}

}  // namespace resonance::detail
