#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "resonance/geometry.hpp"
#include "resonance/schottky.hpp"

namespace resonance {

/// Index (w_1, ..., w_n, l) of a refined interval I_w = S_{w_1} ... S_{w_n} . I_l.
struct Word {
  std::vector<int> letters;  // w_1 .. w_n
  int tail = 0;              // l

  std::size_t level() const { return letters.size(); }
  int first() const { return letters.empty() ? tail : letters.front(); }

  /// w_k != -w_{k-1} and l != w_n.
  bool admissible(int q) const;

  auto operator<=>(const Word&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Word& w);
std::string to_string(const Word& w);

/// All level-n words, in the prepend order of the recursive construction
/// (outer loop over level n-1 words, inner loop over I_G). Size 2q(2q-1)^n.
std::vector<Word> index_set(int q, int n);

/// Closed-form |W_n| = 2q(2q-1)^n.
std::size_t index_set_size(int q, int n);

/// I_w; for n >= 1 contained in I_{-w_1}.
Interval refined_interval(const SchottkyData& data, const Word& w);

/// The 2q-1 words w with a nonzero coefficient L_{v,w}:
/// level 0: all w != -v; level n >= 1: w = (w_1, v_1, ..., v_{n-1}; -v_n), w_1 != -v_1.
std::vector<Word> block_partners(int q, const Word& v);

/// Generator index k of the coefficient tau_s(S_k) of block (v, w).
int block_coefficient(const Word& w);

/// Map g with (tau_s(S_k) f)(x) = g'(x)^s f(g.x): S_{-k} for the coefficient above.
MoebiusTransform pullback_map(const SchottkyData& data, const Word& w);

/// Chart of I_w over its base interval I_l (identity chart at level 0).
template <class Real = double>
BasicChart<Real> refined_chart(const SchottkyData& data, const Word& w) {
  const Interval& base = data.interval(w.tail);
  BasicChart<Real> chart{Real(base.center), Real(base.radius), Real(0)};
  if (w.level() == 0) return chart;
  // T_w^{-1}(inf), pushed through one inverse generator at a time.
  const MoebiusTransform first = data.generator(-w.letters.front());
  Real pole = Real(first.a()) / Real(first.c());
  for (std::size_t k = 1; k < w.letters.size(); ++k) {
    pole = act(data.generator(-w.letters[k]), pole);
  }
  chart.t = -chart.radius / (pole - chart.center);
  return chart;
}

/// The maps S_{w_n}, ..., S_{w_1} whose successive action carries I_l onto I_w.
std::vector<MoebiusTransform> lift_maps(const SchottkyData& data, const Word& w);

/// Map between the base intervals of block (v, w): T_w^{-1} g T_v with
/// T_w = S_{w_1} ... S_{w_n} and g = pullback_map(data, w). Equals g at level 0
/// and S_{v_n} above.
MoebiusTransform chart_transition(const SchottkyData& data, const Word& v, const Word& w);

/// Nonzero (row, column) positions of the level-n block matrix in index_set order.
std::vector<std::pair<std::size_t, std::size_t>> sparsity_pattern(int q, int n);

}  // namespace resonance
