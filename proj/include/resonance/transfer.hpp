#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "resonance/chebyshev.hpp"
#include "resonance/linalg.hpp"
#include "resonance/refinement.hpp"
#include "resonance/schottky.hpp"

namespace resonance {

struct TransferOptions {
  /// Matrices up to this dimension use the dense LU; larger ones the sparse LU.
  std::size_t dense_cutoff = 8192;
  /// lparts refuses to build operators above this dimension.
  std::size_t dimension_cap = 1u << 18;
};

/// Nonzero block (v, w) of the discretized operator: rows from word v, columns from word w.
struct TransferBlock {
  std::size_t row = 0;
  std::size_t col = 0;
  LBlockResult data;
};

/// The s-independent parts of the level-n, order-N discretization.
struct StaticParts {
  SchottkyData surface;
  int order = 0;
  int level = 0;
  std::vector<Word> words;
  std::vector<Interval> intervals;   // I_w in word order
  std::vector<TransferBlock> blocks; // ordered by (row, col)
  std::size_t dim = 0;
  TransferOptions options;
};

/// Builds every nonzero block (one per block_partners pair). Blocks are
/// computed in parallel.
StaticParts lparts(const SchottkyData& data, int order, int level,
                   const TransferOptions& options = {});

/// Largest |f_i^s| over all blocks must stay below this bound.
inline constexpr double kOverflowBound = 1e300;

/// 1 - L_s^{(N)} as a dense matrix.
ComplexMatrix assemble(const StaticParts& parts, cplx s);
/// Same for real s; the matrix is then real.
RealMatrix assemble_real(const StaticParts& parts, double s);
/// 1 - L_s^{(N)} in coordinate form.
SparseMatrixCOO assemble_sparse(const StaticParts& parts, cplx s);

/// Z(s) = det(1 - L_s^{(N)}). Dense LU up to options.dense_cutoff, sparse
/// above; real arithmetic on the real axis.
ScaledComplex zeta(const StaticParts& parts, cplx s);

/// The same discretization with blocks, assembly and LU carried out in
/// quad precision (113-bit significand). For points where |Z| is large and the
/// determinant is badly conditioned with respect to the entries, such as
/// Re s < 0 on surfaces with wide funnels.
class ExtendedTransfer {
 public:
  ExtendedTransfer(const SchottkyData& data, int order, int level,
                   const TransferOptions& options = {});
  ~ExtendedTransfer();
  ExtendedTransfer(ExtendedTransfer&&) noexcept;
  ExtendedTransfer& operator=(ExtendedTransfer&&) noexcept;

  std::size_t dim() const;
  /// Z(s) rounded to double; throws Overflow outside the double range.
  cplx zeta(cplx s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

namespace serial {

/// Reference versions without OpenMP.
StaticParts lparts(const SchottkyData& data, int order, int level,
                   const TransferOptions& options = {});
ComplexMatrix assemble(const StaticParts& parts, cplx s);
ScaledComplex zeta(const StaticParts& parts, cplx s);

}  // namespace serial

}  // namespace resonance
