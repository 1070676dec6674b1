#include <cmath>
#include <exception>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>
#include <omp.h>

#include "block_kernel.hpp"
#include "resonance/errors.hpp"
#include "resonance/transfer.hpp"

namespace resonance {

namespace {

using Real = boost::multiprecision::float128;
using Complex = boost::multiprecision::complex128;

struct Block {
  std::size_t row = 0;
  std::size_t col = 0;
  BasicBlock<Real> data;
};

inline Real abs1(const Complex& z) {
  return boost::multiprecision::abs(z.real()) + boost::multiprecision::abs(z.imag());
}

Complex lu_determinant(std::vector<Complex>& a, std::size_t n) {
  Complex det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    Real best = abs1(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Real v = abs1(a[i * n + k]);
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0) return Complex(0);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      det = -det;
    }
    const Complex inv = Complex(1) / a[k * n + k];
    det *= a[k * n + k];
    const auto rows = static_cast<std::ptrdiff_t>(n - k - 1);
#pragma omp parallel for schedule(static) if (rows > 64 && !omp_in_parallel())
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
      const std::size_t i = k + 1 + static_cast<std::size_t>(r);
      const Complex factor = a[i * n + k] * inv;
      if (factor == Complex(0)) continue;
      Complex* dst = &a[i * n];
      const Complex* src = &a[k * n];
      for (std::size_t j = k + 1; j < n; ++j) dst[j] -= factor * src[j];
    }
  }
  return det;
}

}  // namespace

struct ExtendedTransfer::Impl {
  int order = 0;
  std::size_t dim = 0;
  std::vector<Block> blocks;
};

ExtendedTransfer::ExtendedTransfer(const SchottkyData& data, int order, int level,
                                   const TransferOptions& options)
    : impl_(std::make_unique<Impl>()) {
  if (order < 1 || level < 0) {
    throw Error(ErrorCode::InvalidParameter, "lparts needs order >= 1 and level >= 0");
  }
  const std::size_t dim = index_set_size(data.q(), level) * static_cast<std::size_t>(order);
  if (dim > options.dimension_cap) {
    std::ostringstream msg;
    msg << "dimension " << dim << " exceeds cap " << options.dimension_cap;
    throw Error(ErrorCode::DimensionCap, msg.str());
  }
  impl_->order = order;
  impl_->dim = dim;

  const auto words = index_set(data.q(), level);
  std::vector<BasicChart<Real>> charts;
  charts.reserve(words.size());
  std::map<Word, std::size_t> position;
  for (std::size_t i = 0; i < words.size(); ++i) {
    charts.push_back(refined_chart<Real>(data, words[i]));
    position.emplace(words[i], i);
  }
  for (std::size_t row = 0; row < words.size(); ++row) {
    for (const Word& w : block_partners(data.q(), words[row])) {
      impl_->blocks.push_back({row, position.at(w), {}});
    }
  }

  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(impl_->blocks.size());
#pragma omp parallel for schedule(dynamic, 4) if (!omp_in_parallel())
  for (std::ptrdiff_t b = 0; b < count; ++b) {
    Block& block = impl_->blocks[static_cast<std::size_t>(b)];
    try {
      const Word& v = words[block.row];
      const Word& w = words[block.col];
      const auto lift = lift_maps(data, v);
      block.data = detail::block_kernel<Real>(order, charts[block.row], charts[block.col],
                                              chart_transition(data, v, w), lift,
                                              pullback_map(data, w));
    } catch (...) {
#pragma omp critical(resonance_extended_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

ExtendedTransfer::~ExtendedTransfer() = default;
ExtendedTransfer::ExtendedTransfer(ExtendedTransfer&&) noexcept = default;
ExtendedTransfer& ExtendedTransfer::operator=(ExtendedTransfer&&) noexcept = default;

std::size_t ExtendedTransfer::dim() const { return impl_->dim; }

cplx ExtendedTransfer::zeta(cplx s) const {
  const std::size_t dim = impl_->dim;
  const auto n = static_cast<std::size_t>(impl_->order);
  const Real sigma(s.real());
  const Real tau(s.imag());

  std::vector<Complex> a(dim * dim, Complex(0));
  for (std::size_t i = 0; i < dim; ++i) a[i * dim + i] = Complex(1);
  for (const Block& block : impl_->blocks) {
    for (std::size_t i = 0; i < n; ++i) {
      const Real& lf = block.data.log_f[i];
      if (static_cast<double>(sigma * lf) > std::log(kOverflowBound)) {
        std::ostringstream msg;
        msg << "|f^s| exceeds " << kOverflowBound << " at s = " << s;
        throw Error(ErrorCode::Overflow, msg.str());
      }
      const Real modulus = exp(sigma * lf);
      const Complex fs(modulus * cos(tau * lf), modulus * sin(tau * lf));
      Complex* dst = &a[(block.row * n + i) * dim + block.col * n];
      const Real* m = &block.data.m[i * n];
      for (std::size_t j = 0; j < n; ++j) dst[j] -= fs * m[j];
    }
  }

  const Complex det = lu_determinant(a, dim);
  const cplx value(static_cast<double>(det.real()), static_cast<double>(det.imag()));
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw Error(ErrorCode::Overflow, "determinant leaves the double range");
  }
  return value;
}

}  // namespace resonance
