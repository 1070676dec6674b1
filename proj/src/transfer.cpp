#include "resonance/transfer.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <sstream>

#include <omp.h>

#include "resonance/errors.hpp"

namespace resonance {

namespace {

StaticParts build_parts(const SchottkyData& data, int order, int level,
                        const TransferOptions& options, bool parallel) {
  if (order < 1 || level < 0) {
    throw Error(ErrorCode::InvalidParameter, "lparts needs order >= 1 and level >= 0");
  }
  const std::size_t words = index_set_size(data.q(), level);
  const std::size_t dim = words * static_cast<std::size_t>(order);
  if (dim > options.dimension_cap) {
    std::ostringstream msg;
    msg << "dimension " << dim << " exceeds cap " << options.dimension_cap;
    throw Error(ErrorCode::DimensionCap, msg.str());
  }

  StaticParts parts{data, order, level, index_set(data.q(), level), {}, {}, dim, options};
  parts.intervals.reserve(parts.words.size());
  std::vector<Chart> charts;
  charts.reserve(parts.words.size());
  for (const Word& w : parts.words) {
    parts.intervals.push_back(refined_interval(data, w));
    charts.push_back(refined_chart(data, w));
  }

  std::map<Word, std::size_t> position;
  for (std::size_t i = 0; i < parts.words.size(); ++i) position.emplace(parts.words[i], i);
  for (std::size_t row = 0; row < parts.words.size(); ++row) {
    for (const Word& w : block_partners(data.q(), parts.words[row])) {
      parts.blocks.push_back({row, position.at(w), {}});
    }
  }

  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(parts.blocks.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel && !omp_in_parallel())
  for (std::ptrdiff_t b = 0; b < count; ++b) {
    TransferBlock& block = parts.blocks[static_cast<std::size_t>(b)];
    try {
      const Word& v = parts.words[block.row];
      const Word& w = parts.words[block.col];
      block.data = lblock(order, charts[block.row], charts[block.col],
                          chart_transition(data, v, w), lift_maps(data, v), pullback_map(data, w));
    } catch (...) {
#pragma omp critical(resonance_lparts_error)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return parts;
}

void check_overflow(const StaticParts& parts, cplx s) {
  const double limit = std::log(kOverflowBound);
  for (const auto& block : parts.blocks) {
    for (double lf : block.data.log_f) {
      if (s.real() * lf > limit) {
        std::ostringstream msg;
        msg << "|f^s| exceeds " << kOverflowBound << " in block " << parts.words[block.row]
            << " x " << parts.words[block.col] << " at s = " << s
            << "; use smaller |Re s| or a higher refinement level";
        throw Error(ErrorCode::Overflow, msg.str());
      }
    }
  }
}

template <class T>
inline T weight(double log_f, T s);

template <>
inline cplx weight<cplx>(double log_f, cplx s) {
  return std::polar(std::exp(s.real() * log_f), s.imag() * log_f);
}

template <>
inline double weight<double>(double log_f, double s) {
  return std::exp(s * log_f);
}

template <class T>
DenseMatrix<T> assemble_dense(const StaticParts& parts, T s, bool parallel) {
  check_overflow(parts, cplx(s));
  auto out = DenseMatrix<T>::identity(parts.dim);
  const auto n = static_cast<std::size_t>(parts.order);
  const auto count = static_cast<std::ptrdiff_t>(parts.blocks.size());
#pragma omp parallel for schedule(static) if (parallel && !omp_in_parallel())
  for (std::ptrdiff_t b = 0; b < count; ++b) {
    const auto& block = parts.blocks[static_cast<std::size_t>(b)];
    const std::size_t r0 = block.row * n;
    const std::size_t c0 = block.col * n;
    for (std::size_t i = 0; i < n; ++i) {
      const T fs = weight(block.data.log_f[i], s);
      T* dst = &out(r0 + i, c0);
      const double* m = &block.data.m[i * n];
      for (std::size_t j = 0; j < n; ++j) dst[j] -= fs * m[j];
    }
  }
  return out;
}

}  // namespace

StaticParts lparts(const SchottkyData& data, int order, int level,
                   const TransferOptions& options) {
  return build_parts(data, order, level, options, true);
}

ComplexMatrix assemble(const StaticParts& parts, cplx s) {
  return assemble_dense(parts, s, true);
}

RealMatrix assemble_real(const StaticParts& parts, double s) {
  return assemble_dense(parts, s, true);
}

SparseMatrixCOO assemble_sparse(const StaticParts& parts, cplx s) {
  check_overflow(parts, s);
  const auto n = static_cast<std::size_t>(parts.order);
  SparseMatrixCOO out;
  out.dim = parts.dim;
  const std::size_t nnz = parts.dim + parts.blocks.size() * n * n;
  out.rows.reserve(nnz);
  out.cols.reserve(nnz);
  out.values.reserve(nnz);
  for (std::size_t i = 0; i < parts.dim; ++i) {
    out.rows.push_back(static_cast<int>(i));
    out.cols.push_back(static_cast<int>(i));
    out.values.emplace_back(1.0);
  }
  for (const auto& block : parts.blocks) {
    for (std::size_t i = 0; i < n; ++i) {
      const cplx fs = weight(block.data.log_f[i], s);
      for (std::size_t j = 0; j < n; ++j) {
        out.rows.push_back(static_cast<int>(block.row * n + i));
        out.cols.push_back(static_cast<int>(block.col * n + j));
        out.values.push_back(-fs * block.data.m[i * n + j]);
      }
    }
  }
  return out;
}

ScaledComplex zeta(const StaticParts& parts, cplx s) {
  if (parts.dim > parts.options.dense_cutoff) return sparse_log_det(assemble_sparse(parts, s));
  if (s.imag() == 0.0) return log_det(assemble_real(parts, s.real()));
  return log_det(assemble(parts, s));
}

namespace serial {

StaticParts lparts(const SchottkyData& data, int order, int level,
                   const TransferOptions& options) {
  return build_parts(data, order, level, options, false);
}

ComplexMatrix assemble(const StaticParts& parts, cplx s) {
  return assemble_dense(parts, s, false);
}

ScaledComplex zeta(const StaticParts& parts, cplx s) {
  return serial::log_det(serial::assemble(parts, s));
}

}  // namespace serial

}  // namespace resonance
