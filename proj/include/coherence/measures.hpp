#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "coherence/simplex_grid.hpp"
#include "coherence/states.hpp"

namespace coherence {

enum class MeasureId { L1, Trace, Fidelity, RelativeEntropy };

MeasureId parse_measure(std::string_view name);  // l1 | trace | fidelity | relent
std::string measure_name(MeasureId id);

enum class Method { ClosedForm, Grid, Refine };

std::string method_name(Method m);

// Coherence value together with the optimal incoherent state that attains
// it and the route that produced it. argmin_state is always incoherent.
struct OptimizationResult {
  double value = 0.0;
  DensityMatrix argmin_state;
  Method method = Method::ClosedForm;
};

// Sum of off-diagonal magnitudes.
double c_l1(const DensityMatrix& rho);

// Minimal trace-norm distance to an incoherent state. Closed form for
// qubits (sqrt(rx^2 + ry^2), argmin at (0,0,rz)) and for X/Y/Z-class
// qutrits (2|off|, argmin = dephase). Everything else runs the simplex
// grid: with golden-section refinement at dim 3, grid only at dim >= 4
// (accuracy limited by the grid pitch, method tag Grid).
OptimizationResult c_trace(const DensityMatrix& rho);

// 1 - sqrt(max fidelity over incoherent states). Closed form for qubits;
// simplex grid + refinement at dim 3, grid only above.
OptimizationResult c_fidelity(const DensityMatrix& rho);

// S(dephase(rho)) - S(rho), von Neumann entropy in bits.
double c_relative_entropy(const DensityMatrix& rho);

// Uniform dispatch used by the axiom checkers.
double evaluate(MeasureId id, const DensityMatrix& rho);

// Entropy in bits of a probability vector; eigenvalues below 1e-12 drop
// out (0 log 0 = 0).
double entropy_bits(std::span<const double> probabilities);

// Closed-form eigenvalues of rho_X - diag(delta) for an X-class qutrit,
// in the order (a22 - y, smaller pair eigenvalue, larger pair eigenvalue).
std::array<double, 3> x_class_eigenvalues(const QutritClassState& rho, const std::array<double, 3>& delta);

enum class DistanceKind { Trace, OneMinusSqrtFidelity };

// Distance from rho to the diagonal state diag(delta), evaluated through
// the full matrix route (eigendecomposition), no closed forms.
class DiagonalObjective {
public:
  DiagonalObjective(const DensityMatrix& rho, DistanceKind kind);
  double operator()(std::span<const double> delta) const;

private:
  const DensityMatrix* rho_;
  DistanceKind kind_;
  std::optional<ComplexMatrix> sqrt_rho_;  // cached for the fidelity route
};

double diagonal_distance(const DensityMatrix& rho, std::span<const double> delta, DistanceKind kind);

// Exhaustive simplex grid + golden-section refinement, independent of the
// closed forms. Dims 2 and 3 only; grid_points is the number of
// subdivisions per coordinate (>= 100).
OptimizationResult brute_force_min(const DensityMatrix& rho, DistanceKind kind, int grid_points,
                                   ExecPolicy policy = ExecPolicy::Parallel);

// If rho is an X/Y/Z-class qutrit (at most one nonzero off-diagonal pair,
// tolerance 1e-12), returns it.
std::optional<QutritClassState> detect_qutrit_class(const DensityMatrix& rho);

}  // namespace coherence
