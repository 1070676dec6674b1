#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <sstream>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <omp.h>

#include "resonance/errors.hpp"
#include "resonance/orbit_oracle.hpp"

namespace resonance {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using Mat2 = std::array<Real, 4>;

struct Complex {
  Real re;
  Real im;
};

Mat2 multiply(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

/// Smallest p > 0 with word rotated by p equal to word, or 0 when some other
/// rotation is lexicographically smaller.
std::size_t canonical_period(const std::vector<int>& word) {
  const std::size_t k = word.size();
  for (std::size_t shift = 1; shift < k; ++shift) {
    for (std::size_t i = 0; i < k; ++i) {
      const int rotated = word[(i + shift) % k];
      if (rotated < word[i]) return 0;
      if (rotated > word[i]) break;
      if (i == k - 1) return shift;
    }
  }
  return k;
}

struct Orbit {
  Real length;
  Real weight;  // rotations / (1 - e^{-length})
};

std::vector<Orbit> rotation_classes(const std::vector<Mat2>& generators,
                                    const std::vector<int>& alphabet, int k,
                                    std::size_t& tuples) {
  const Real hyperbolic = Real(2) + Real(1e-12);
  const std::size_t letters = alphabet.size();
  std::vector<Orbit> out;
  std::vector<int> word(static_cast<std::size_t>(k));
  std::vector<Mat2> prefix(static_cast<std::size_t>(k) + 1);
  prefix[0] = {Real(1), Real(0), Real(0), Real(1)};
  std::vector<int> choice(static_cast<std::size_t>(k), -1);
  tuples = 0;
  int depth = 0;
  while (depth >= 0) {
    const auto d = static_cast<std::size_t>(depth);
    if (++choice[d] >= static_cast<int>(letters)) {
      choice[d] = -1;
      --depth;
      continue;
    }
    const int letter = alphabet[static_cast<std::size_t>(choice[d])];
    if (depth > 0 && letter == -word[d - 1]) continue;
    if (depth == k - 1 && k > 1 && letter == -word[0]) continue;
    word[d] = letter;
    if (depth < k - 1) {
      prefix[d + 1] = multiply(prefix[d], generators[static_cast<std::size_t>(choice[d])]);
      ++depth;
      continue;
    }
    const std::size_t period = canonical_period(word);
    if (period == 0) continue;
    const Mat2 p = multiply(prefix[d], generators[static_cast<std::size_t>(choice[d])]);
    const Real t = abs(p[0] + p[3]);
    if (!(t >= hyperbolic)) {
      std::ostringstream msg;
      msg << "word of length " << k << " has |trace| " << static_cast<double>(t);
      throw Error(ErrorCode::NonHyperbolicWord, msg.str());
    }
    const Real x = t / 2;
    const Real length = 2 * log(x + sqrt(x * x - 1));
    out.push_back({length, Real(period) / (1 - exp(-length))});
    tuples += period;
  }
  return out;
}

}  // namespace

struct PreciseOrbitExpansion::Impl {
  std::vector<std::vector<Orbit>> orbits;
  std::vector<std::size_t> tuples;
};

PreciseOrbitExpansion::PreciseOrbitExpansion(const SchottkyData& data, int max_order,
                                             std::size_t cap)
    : impl_(std::make_unique<Impl>()) {
  if (max_order < 1) throw Error(ErrorCode::InvalidParameter, "truncation must be >= 1");
  const double count = std::pow(2.0 * data.q() - 1.0, max_order);
  if (count > static_cast<double>(cap)) {
    std::ostringstream msg;
    msg << "(2q-1)^k = " << count << " exceeds enumeration cap " << cap;
    throw Error(ErrorCode::EnumerationCap, msg.str());
  }

  const auto alphabet = data.letters();
  std::vector<Mat2> generators;
  for (int letter : alphabet) {
    const MoebiusTransform g = data.generator(letter);
    const auto& e = g.entries();
    Mat2 m{Real(e[0]), Real(e[1]), Real(e[2]), Real(e[3])};
    const Real scale = 1 / sqrt(m[0] * m[3] - m[1] * m[2]);
    for (Real& x : m) x *= scale;
    generators.push_back(m);
  }

  const auto orders = static_cast<std::size_t>(max_order);
  impl_->orbits.resize(orders);
  impl_->tuples.resize(orders);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
  for (int k = 1; k <= max_order; ++k) {
    try {
      const auto i = static_cast<std::size_t>(k - 1);
      impl_->orbits[i] = rotation_classes(generators, alphabet, k, impl_->tuples[i]);
    } catch (...) {
#pragma omp critical(resonance_precise_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

PreciseOrbitExpansion::~PreciseOrbitExpansion() = default;
PreciseOrbitExpansion::PreciseOrbitExpansion(PreciseOrbitExpansion&&) noexcept = default;
PreciseOrbitExpansion& PreciseOrbitExpansion::operator=(PreciseOrbitExpansion&&) noexcept =
    default;

int PreciseOrbitExpansion::max_order() const { return static_cast<int>(impl_->orbits.size()); }

std::size_t PreciseOrbitExpansion::tuple_count(int k) const {
  return impl_->tuples.at(static_cast<std::size_t>(k - 1));
}

namespace {

Complex precise_trace(const std::vector<Orbit>& orbits, const Real& sigma, const Real& tau) {
  Complex sum{Real(0), Real(0)};
  for (const Orbit& o : orbits) {
    const Real modulus = o.weight * exp(-sigma * o.length);
    const Real angle = tau * o.length;
    sum.re += modulus * cos(angle);
    sum.im -= modulus * sin(angle);
  }
  return sum;
}

}  // namespace

cplx PreciseOrbitExpansion::trace(cplx s, int k) const {
  const auto& orbits = impl_->orbits.at(static_cast<std::size_t>(k - 1));
  const Complex t = precise_trace(orbits, Real(s.real()), Real(s.imag()));
  return {static_cast<double>(t.re), static_cast<double>(t.im)};
}

cplx PreciseOrbitExpansion::zeta(cplx s, int truncation) const {
  if (truncation < 0 || truncation > max_order()) {
    throw Error(ErrorCode::InvalidParameter, "truncation exceeds cached word length");
  }
  const auto n = static_cast<std::size_t>(truncation);
  std::vector<Complex> traces(n + 1);
  const Real sigma(s.real());
  const Real tau(s.imag());
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
  for (std::ptrdiff_t k = 1; k <= count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    traces[i] = precise_trace(impl_->orbits[i - 1], sigma, tau);
  }

  std::vector<Complex> d(n + 1);
  d[0] = {Real(1), Real(0)};
  Complex z = d[0];
  for (std::size_t m = 1; m <= n; ++m) {
    Complex sum{Real(0), Real(0)};
    for (std::size_t k = 1; k <= m; ++k) {
      const Complex& a = d[m - k];
      const Complex& b = traces[k];
      sum.re += a.re * b.re - a.im * b.im;
      sum.im += a.re * b.im + a.im * b.re;
    }
    d[m] = {-sum.re / Real(m), -sum.im / Real(m)};
    z.re += d[m].re;
    z.im += d[m].im;
  }
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

}  // namespace resonance
