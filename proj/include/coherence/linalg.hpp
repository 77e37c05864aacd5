#pragma once

#include <vector>

#include "coherence/complex_matrix.hpp"

namespace coherence {

// Result of diagonalizing a Hermitian matrix: eigenvalues ascending,
// eigenvector for eigenvalues[k] in column k of eigenvectors.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  // V diag(lambda) V^dagger
  ComplexMatrix reconstruct() const;
};

// Diagonalizes a Hermitian matrix. Closed form for dim 2, trigonometric
// cubic for dim 3 (with a Jacobi fallback when the analytic eigenvectors
// are ill-conditioned), cyclic Jacobi sweeps for dim >= 4.
// Throws std::invalid_argument if the input is not Hermitian within 1e-9,
// reporting the largest asymmetry.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

// Sum of singular values. Hermitian input reduces to sum |eigenvalue|;
// general input goes through eig(M^dagger M).
double trace_norm(const ComplexMatrix& m);

// Hermitian PSD square root via eigendecomposition. Eigenvalues in
// [-1e-8, 0) are clamped to zero; anything below -1e-8 is rejected.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

// Uhlmann fidelity [tr sqrt(sqrt(a) b sqrt(a))]^2 for two density
// matrices given as raw Hermitian PSD unit-trace matrices. Result is
// clamped to [0, 1].
double fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

namespace tol {
inline constexpr double hermitian_input = 1e-9;   // pre-check on eig/psd inputs
inline constexpr double psd_reject = -1e-8;       // eigenvalue below this is non-PSD
}  // namespace tol

}  // namespace coherence
