#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "resonance/linalg.hpp"
#include "resonance/schottky.hpp"

namespace resonance {

/// A cyclically admissible word w_1..w_k (w_{i+1} != -w_i, w_1 != -w_k) and
/// the geodesic length of S_{w_1} ... S_{w_k}.
struct SymbolicOrbit {
  std::vector<int> word;
  double length = 0.0;  // 2 arccosh(|t|/2)
  double trace = 0.0;   // t; +/-inf once |t| leaves the double range
};

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

/// Every ordered cyclically admissible k-tuple (periodic points, not
/// conjugacy classes). Throws EnumerationCap when (2q-1)^k > cap and
/// NonHyperbolicWord when some |trace| < 2 + 1e-12.
std::vector<SymbolicOrbit> orbits(const SchottkyData& data, int k,
                                  std::size_t cap = kDefaultEnumerationCap);

/// Lengths only, in the same order as `orbits`.
std::vector<double> orbit_lengths(const SchottkyData& data, int k,
                                  std::size_t cap = kDefaultEnumerationCap);

/// Number of cyclically admissible k-tuples, tr(A^k) = (2q-1)^k + q + (q-1)(-1)^k.
std::size_t orbit_count(int q, int k);

/// Tr L_s^k = sum over k-orbits of e^{-s l} / (1 - e^{-l}).
cplx trace_power(const SchottkyData& data, cplx s, int k);

/// Z_N(s) = 1 + sum_{n=1}^N d_n(s), d_0 = 1, d_n = -(1/n) sum_{k=1}^n d_{n-k} Tr L_s^k.
cplx zeta_poe(const SchottkyData& data, cplx s, int truncation);

/// Caches the length spectrum up to a word length so that many values of s
/// can be evaluated without re-enumerating orbits.
class PeriodicOrbitExpansion {
 public:
  PeriodicOrbitExpansion(const SchottkyData& data, int max_order,
                         std::size_t cap = kDefaultEnumerationCap);

  int max_order() const { return static_cast<int>(lengths_.size()); }
  const std::vector<double>& lengths(int k) const { return lengths_.at(k - 1); }

  cplx trace(cplx s, int k) const;
  /// d_0 .. d_truncation.
  std::vector<cplx> coefficients(cplx s, int truncation) const;
  cplx zeta(cplx s, int truncation) const;
  cplx zeta(cplx s) const { return zeta(s, max_order()); }

 private:
  std::vector<std::vector<double>> lengths_;
};

/// The same expansion with word products, lengths, traces and the d_n
/// recursion in 50 significant digits. The recursion cancels terms of size
/// |Tr L_s^k|, which exceeds 1e30 at Re s < 0 on wide-funnel surfaces, so the
/// double version loses every digit there. Each rotation class of words is
/// enumerated once and weighted by its number of distinct rotations.
class PreciseOrbitExpansion {
 public:
  PreciseOrbitExpansion(const SchottkyData& data, int max_order,
                        std::size_t cap = kDefaultEnumerationCap);
  ~PreciseOrbitExpansion();
  PreciseOrbitExpansion(PreciseOrbitExpansion&&) noexcept;
  PreciseOrbitExpansion& operator=(PreciseOrbitExpansion&&) noexcept;

  int max_order() const;
  /// Number of ordered k-tuples represented, equal to orbit_count(q, k).
  std::size_t tuple_count(int k) const;

  cplx trace(cplx s, int k) const;
  cplx zeta(cplx s, int truncation) const;
  cplx zeta(cplx s) const { return zeta(s, max_order()); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace resonance
