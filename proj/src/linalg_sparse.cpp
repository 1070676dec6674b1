#include <numbers>
#include <vector>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "resonance/errors.hpp"
#include "resonance/linalg.hpp"

namespace resonance {

namespace {

using SparseComplex = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;

// Eigen only offers a real sign for the determinant; read the diagonal of the
// supernodal factor directly to keep the complex phase.
class PhasedSparseLU : public Eigen::SparseLU<SparseComplex, Eigen::COLAMDOrdering<int>> {
 public:
  ScaledComplex scaled_determinant() const {
    double log_modulus = 0.0;
    double phase = (m_detPermR * m_detPermC) > 0 ? 0.0 : std::numbers::pi;
    for (Eigen::Index j = 0; j < cols(); ++j) {
      for (SCMatrix::InnerIterator it(m_Lstore, j); it; ++it) {
        if (it.index() == j) {
          const cplx u = it.value();
          if (u == cplx(0.0)) return ScaledComplex::zero();
          log_modulus += std::log(std::abs(u));
          phase = wrap_phase(phase + std::arg(u));
          break;
        }
      }
    }
    return {log_modulus, phase};
  }
};

}  // namespace

ScaledComplex sparse_log_det(const SparseMatrixCOO& a) {
  std::vector<Eigen::Triplet<cplx, int>> triplets;
  triplets.reserve(a.values.size());
  for (std::size_t e = 0; e < a.values.size(); ++e) {
    triplets.emplace_back(a.rows[e], a.cols[e], a.values[e]);
  }
  const auto n = static_cast<Eigen::Index>(a.dim);
  SparseComplex m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();

  PhasedSparseLU lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success) {
    // Structural or numerical singularity.
    return ScaledComplex::zero();
  }
  return lu.scaled_determinant();
}

}  // namespace resonance
