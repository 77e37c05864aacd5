#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "coherence/complex_matrix.hpp"
#include "coherence/linalg.hpp"

namespace coherence {

// Validated quantum state: Hermitian within 1e-9, unit trace within 1e-9,
// eigenvalues >= -1e-9. Immutable after construction.
class DensityMatrix {
public:
  static DensityMatrix from_matrix(ComplexMatrix m);

  int dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const cplx& operator()(int i, int j) const { return matrix_(i, j); }

private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

struct BlochVector {
  double rx = 0.0;
  double ry = 0.0;
  double rz = 0.0;

  double norm() const;
  double xy_norm2() const { return rx * rx + ry * ry; }
};

enum class QutritClass { X, Y, Z };

// Qutrit with a single symmetric off-diagonal pair: positions (0,2) for X,
// (0,1) for Y, (1,2) for Z.
struct QutritClassState {
  QutritClass tag;
  std::array<double, 3> diagonal;
  cplx off_diagonal;

  DensityMatrix to_density() const;
  // row/column indices of the off-diagonal pair
  std::pair<int, int> coupled_indices() const;
};

// rho = (I + r . sigma) / 2; rejects |r| > 1 + 1e-9.
DensityMatrix from_bloch(const BlochVector& r);

// Inverse of from_bloch; dim-2 states only.
BlochVector to_bloch(const DensityMatrix& rho);

// Deletes all off-diagonal entries (fixed computational basis).
DensityMatrix dephase(const DensityMatrix& rho);

// True iff every off-diagonal magnitude is <= tol.
bool is_incoherent(const DensityMatrix& rho, double tol = 1e-9);

enum class Ensemble { BlochBall, HilbertSchmidt };

// Deterministic for a fixed seed. BlochBall is dim-2 only and uniform over
// the unit ball; HilbertSchmidt draws G with iid standard-normal complex
// entries and returns G G^dagger / tr(G G^dagger).
DensityMatrix random_state(int dim, std::uint64_t seed, Ensemble ensemble);

// Uniform over the probability simplex, diagonal in the fixed basis.
DensityMatrix random_diagonal_state(int dim, std::uint64_t seed);

// Validates the class-state invariants: diagonal >= 0 summing to 1 within
// 1e-9, |off|^2 <= product of the two coupled diagonal entries.
QutritClassState make_qutrit_class(QutritClass tag, const std::array<double, 3>& diagonal, cplx off_diagonal);

// Deterministic random class state for audits and theorem verification.
QutritClassState random_qutrit_class(QutritClass tag, std::uint64_t seed);

}  // namespace coherence
