#include "resonance/linalg.hpp"

#include <algorithm>
#include <numbers>
#include <utility>

#include <omp.h>

namespace resonance {

double wrap_phase(double angle) {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

ScaledComplex ScaledComplex::from(cplx z) {
  if (z == cplx(0.0)) return zero();
  return {std::log(std::abs(z)), wrap_phase(std::arg(z))};
}

cplx ScaledComplex::scaled(double offset) const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_modulus - offset), phase);
}

namespace {

inline double abs1(double x) { return std::abs(x); }
inline double abs1(const cplx& z) { return std::abs(z.real()) + std::abs(z.imag()); }

inline double arg_of(double x) { return x < 0.0 ? std::numbers::pi : 0.0; }
inline double arg_of(const cplx& z) { return std::arg(z); }

constexpr std::size_t kBlock = 48;
constexpr std::size_t kParallelThreshold = 96;

template <class T>
inline void axpy_row(T* dst, const T* src, T alpha, std::size_t count) {
  for (std::size_t j = 0; j < count; ++j) dst[j] -= alpha * src[j];
}

template <class T>
void swap_rows(DenseMatrix<T>& a, std::size_t i, std::size_t j) {
  std::swap_ranges(a.row(i).begin(), a.row(i).end(), a.row(j).begin());
}

template <class T>
ScaledComplex blocked_lu_log_det(DenseMatrix<T>& a) {
  const std::size_t n = a.rows();
  double log_modulus = 0.0;
  double phase = 0.0;
  const bool nested = omp_in_parallel() != 0;

  for (std::size_t kb = 0; kb < n; kb += kBlock) {
    const std::size_t kend = std::min(n, kb + kBlock);

    // Panel: eliminate columns kb..kend-1, updating only panel columns.
    for (std::size_t k = kb; k < kend; ++k) {
      std::size_t p = k;
      double best = abs1(a(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        const double v = abs1(a(i, k));
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best == 0.0) return ScaledComplex::zero();
      if (p != k) {
        swap_rows(a, p, k);
        phase += std::numbers::pi;
      }
      const T pivot = a(k, k);
      log_modulus += std::log(std::abs(pivot));
      phase = wrap_phase(phase + arg_of(pivot));

      const T inv = T(1) / pivot;
      const T* urow = &a(k, k + 1);
      const std::size_t width = kend - k - 1;
      for (std::size_t i = k + 1; i < n; ++i) {
        T& lik = a(i, k);
        lik *= inv;
        axpy_row(&a(i, k + 1), urow, lik, width);
      }
    }
    if (kend == n) break;

    const std::size_t trailing = n - kend;
    // U12 = L11^{-1} A12.
    for (std::size_t k = kb; k < kend; ++k) {
      const T* urow = &a(k, kend);
      for (std::size_t i = k + 1; i < kend; ++i) axpy_row(&a(i, kend), urow, a(i, k), trailing);
    }
    // A22 -= L21 U12.
#pragma omp parallel for schedule(static) if (!nested && trailing > kParallelThreshold)
    for (std::size_t i = kend; i < n; ++i) {
      T* dst = &a(i, kend);
      for (std::size_t k = kb; k < kend; ++k) {
        const T lik = a(i, k);
        if (lik != T(0)) axpy_row(dst, &a(k, kend), lik, trailing);
      }
    }
  }
  return {log_modulus, wrap_phase(phase)};
}

template <class T>
ScaledComplex textbook_lu_log_det(DenseMatrix<T>& a) {
  const std::size_t n = a.rows();
  double log_modulus = 0.0;
  double phase = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    if (a(p, k) == T(0)) return ScaledComplex::zero();
    if (p != k) {
      swap_rows(a, p, k);
      phase += std::numbers::pi;
    }
    log_modulus += std::log(std::abs(a(k, k)));
    phase += arg_of(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const T l = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
  return {log_modulus, wrap_phase(phase)};
}

}  // namespace

ScaledComplex log_det(ComplexMatrix a) { return blocked_lu_log_det(a); }
ScaledComplex log_det(RealMatrix a) { return blocked_lu_log_det(a); }

namespace serial {

ScaledComplex log_det(ComplexMatrix a) { return textbook_lu_log_det(a); }
ScaledComplex log_det(RealMatrix a) { return textbook_lu_log_det(a); }

}  // namespace serial

}  // namespace resonance
