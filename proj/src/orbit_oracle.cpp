#include "resonance/orbit_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <sstream>

#include <omp.h>

#include "resonance/errors.hpp"

namespace resonance {

namespace {

using Mat2 = std::array<double, 4>;

inline Mat2 multiply(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

constexpr double kHyperbolicMargin = 1e-12;
// Products longer than this are renormalized to keep entries finite.
constexpr int kRenormalizeAfter = 20;

/// Length from |trace| given as |t_scaled| * e^{log_scale}.
double length_from_trace(double abs_trace_scaled, double log_scale) {
  if (log_scale == 0.0) return 2.0 * std::acosh(0.5 * abs_trace_scaled);
  // arccosh(x) = log x + log(1 + sqrt(1 - 1/x^2)) with x = |t|/2 huge.
  const double log_x = std::log(0.5 * abs_trace_scaled) + log_scale;
  const double inv_x2 = std::exp(-2.0 * log_x);
  return 2.0 * (log_x + std::log1p(std::sqrt(std::max(0.0, 1.0 - inv_x2))));
}

void check_cap(int q, int k, std::size_t cap) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "orbit word length must be >= 1");
  double count = std::pow(2.0 * q - 1.0, k);
  if (count > static_cast<double>(cap)) {
    std::ostringstream msg;
    msg << "(2q-1)^k = " << count << " exceeds enumeration cap " << cap;
    throw Error(ErrorCode::EnumerationCap, msg.str());
  }
}

/// Depth-first walk over admissible k-tuples; `visit(word, trace_scaled, log_scale)`.
template <class Visitor>
void enumerate(const SchottkyData& data, int k, Visitor&& visit) {
  const int q = data.q();
  const auto alphabet = data.letters();
  std::vector<Mat2> generators(alphabet.size());
  std::vector<double> inv_sqrt_det(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    const MoebiusTransform g = data.generator(alphabet[i]);
    generators[i] = g.entries();
    inv_sqrt_det[i] = 1.0 / std::sqrt(g.determinant());
  }
  const bool renormalize = k > kRenormalizeAfter;

  std::vector<int> word(static_cast<std::size_t>(k));
  std::vector<Mat2> prefix(static_cast<std::size_t>(k) + 1);
  std::vector<double> log_scale(static_cast<std::size_t>(k) + 1, 0.0);
  // Product of det^{-1/2} over the prefix; traces are read at unit determinant.
  std::vector<double> unit(static_cast<std::size_t>(k) + 1, 1.0);
  prefix[0] = {1.0, 0.0, 0.0, 1.0};

  // choice[d] indexes the alphabet at depth d.
  std::vector<int> choice(static_cast<std::size_t>(k), -1);
  int depth = 0;
  while (depth >= 0) {
    auto d = static_cast<std::size_t>(depth);
    ++choice[d];
    if (choice[d] >= 2 * q) {
      choice[d] = -1;
      --depth;
      continue;
    }
    const int letter = alphabet[static_cast<std::size_t>(choice[d])];
    if (depth > 0 && letter == -word[d - 1]) continue;
    if (depth == k - 1 && k > 1 && letter == -word[0]) continue;
    word[d] = letter;
    Mat2 p = multiply(prefix[d], generators[static_cast<std::size_t>(choice[d])]);
    double scale = log_scale[d];
    if (renormalize) {
      const double norm = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2]), std::abs(p[3])});
      for (double& e : p) e /= norm;
      scale += std::log(norm);
    }
    prefix[d + 1] = p;
    log_scale[d + 1] = scale;
    unit[d + 1] = unit[d] * inv_sqrt_det[static_cast<std::size_t>(choice[d])];
    if (depth == k - 1) {
      const double t = (p[0] + p[3]) * unit[d + 1];
      visit(word, t, scale);
    } else {
      ++depth;
    }
  }
}

void require_hyperbolic(double abs_trace_scaled, double log_scale, const std::vector<int>& word) {
  if (log_scale == 0.0 && !(abs_trace_scaled >= 2.0 + kHyperbolicMargin)) {
    std::ostringstream msg;
    msg << "word (";
    for (std::size_t i = 0; i < word.size(); ++i) msg << (i ? "," : "") << word[i];
    msg << ") has |trace| " << abs_trace_scaled;
    throw Error(ErrorCode::NonHyperbolicWord, msg.str());
  }
}

}  // namespace

std::vector<SymbolicOrbit> orbits(const SchottkyData& data, int k, std::size_t cap) {
  check_cap(data.q(), k, cap);
  std::vector<SymbolicOrbit> out;
  out.reserve(orbit_count(data.q(), k));
  enumerate(data, k, [&](const std::vector<int>& word, double t, double log_scale) {
    require_hyperbolic(std::abs(t), log_scale, word);
    const double trace = log_scale == 0.0 ? t : t * std::exp(log_scale);
    out.push_back({word, length_from_trace(std::abs(t), log_scale), trace});
  });
  return out;
}

std::vector<double> orbit_lengths(const SchottkyData& data, int k, std::size_t cap) {
  check_cap(data.q(), k, cap);
  std::vector<double> out;
  out.reserve(orbit_count(data.q(), k));
  enumerate(data, k, [&](const std::vector<int>& word, double t, double log_scale) {
    require_hyperbolic(std::abs(t), log_scale, word);
    out.push_back(length_from_trace(std::abs(t), log_scale));
  });
  return out;
}

std::size_t orbit_count(int q, int k) {
  std::size_t power = 1;
  for (int i = 0; i < k; ++i) power *= static_cast<std::size_t>(2 * q - 1);
  const auto qq = static_cast<std::size_t>(q);
  // (q - 1)(-1)^k, added or subtracted.
  return k % 2 == 0 ? power + qq + (qq - 1) : power + qq - (qq - 1);
}

namespace {

cplx trace_from_lengths(const std::vector<double>& lengths, cplx s) {
  cplx sum = 0.0;
  for (double l : lengths) sum += std::exp(-s * l) / (-std::expm1(-l));
  return sum;
}

}  // namespace

cplx trace_power(const SchottkyData& data, cplx s, int k) {
  return trace_from_lengths(orbit_lengths(data, k), s);
}

cplx zeta_poe(const SchottkyData& data, cplx s, int truncation) {
  return PeriodicOrbitExpansion(data, truncation).zeta(s, truncation);
}

PeriodicOrbitExpansion::PeriodicOrbitExpansion(const SchottkyData& data, int max_order,
                                               std::size_t cap) {
  if (max_order < 1) throw Error(ErrorCode::InvalidParameter, "truncation must be >= 1");
  check_cap(data.q(), max_order, cap);
  lengths_.resize(static_cast<std::size_t>(max_order));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
  for (int k = 1; k <= max_order; ++k) {
    try {
      lengths_[static_cast<std::size_t>(k - 1)] = orbit_lengths(data, k, cap);
    } catch (...) {
#pragma omp critical(resonance_orbit_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

cplx PeriodicOrbitExpansion::trace(cplx s, int k) const {
  return trace_from_lengths(lengths(k), s);
}

std::vector<cplx> PeriodicOrbitExpansion::coefficients(cplx s, int truncation) const {
  if (truncation < 0 || truncation > max_order()) {
    throw Error(ErrorCode::InvalidParameter, "truncation exceeds cached word length");
  }
  std::vector<cplx> traces(static_cast<std::size_t>(truncation) + 1);
  for (int k = 1; k <= truncation; ++k) traces[static_cast<std::size_t>(k)] = trace(s, k);

  std::vector<cplx> d(static_cast<std::size_t>(truncation) + 1);
  d[0] = 1.0;
  for (int n = 1; n <= truncation; ++n) {
    cplx sum = 0.0;
    for (int k = 1; k <= n; ++k) {
      sum += d[static_cast<std::size_t>(n - k)] * traces[static_cast<std::size_t>(k)];
    }
    d[static_cast<std::size_t>(n)] = -sum / static_cast<double>(n);
  }
  return d;
}

cplx PeriodicOrbitExpansion::zeta(cplx s, int truncation) const {
  const auto d = coefficients(s, truncation);
  cplx z = 0.0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) z += *it;
  return z;
}

}  // namespace resonance
