#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace resonance {

using cplx = std::complex<double>;

/// Reduces an angle to (-pi, pi].
double wrap_phase(double angle);

/// A complex number stored as log|z| and arg z, so |z| may exceed the
/// double range. An exact zero has log_modulus = -inf.
struct ScaledComplex {
  double log_modulus = 0.0;
  double phase = 0.0;

  static ScaledComplex from(cplx z);
  static ScaledComplex zero() { return {-std::numeric_limits<double>::infinity(), 0.0}; }

  bool is_zero() const { return std::isinf(log_modulus) && log_modulus < 0.0; }

  /// exp(log_modulus - offset) e^{i phase}.
  cplx scaled(double offset) const;
  cplx value() const { return scaled(0.0); }

  friend ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y) {
    return {x.log_modulus + y.log_modulus, wrap_phase(x.phase + y.phase)};
  }
};

/// Row-major dense matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<cplx>;
using RealMatrix = DenseMatrix<double>;

/// log det by blocked LU with partial pivoting; the trailing updates run
/// under OpenMP. Takes the matrix by value and factors it in place.
ScaledComplex log_det(ComplexMatrix a);
ScaledComplex log_det(RealMatrix a);

/// Square sparse matrix in coordinate form; duplicate entries are summed.
struct SparseMatrixCOO {
  std::size_t dim = 0;
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<cplx> values;
};

/// log det through a supernodal sparse LU with COLAMD ordering.
ScaledComplex sparse_log_det(const SparseMatrixCOO& a);

namespace serial {

/// Unblocked textbook elimination with partial pivoting. Reference for
/// testing the parallel kernel; not used on the production path.
ScaledComplex log_det(ComplexMatrix a);
ScaledComplex log_det(RealMatrix a);

}  // namespace serial

}  // namespace resonance
