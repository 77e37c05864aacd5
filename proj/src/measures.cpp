#include "coherence/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coherence/linalg.hpp"

namespace coherence {

namespace {

constexpr double class_detect_tol = 1e-12;
constexpr double incoherent_short_circuit = 1e-12;

// grid subdivisions for the general (no closed form) paths
int default_subdivisions(int dim) {
  switch (dim) {
    case 2:
      return 2000;
    case 3:
      return 120;
    case 4:
      return 40;
    case 5:
      return 30;
    case 6:
      return 20;
    case 7:
      return 15;
    default:
      return 12;
  }
}

DensityMatrix diagonal_state(std::span<const double> coords) {
  std::vector<double> d(coords.begin(), coords.end());
  double sum = 0.0;
  for (auto& e : d) {
    e = std::max(e, 0.0);
    sum += e;
  }
  for (auto& e : d) e /= sum;
  return DensityMatrix::from_matrix(ComplexMatrix::diagonal(d));
}

// shared grid + refine machinery for c_trace/c_fidelity/brute_force_min
OptimizationResult optimize_over_diagonals(const DensityMatrix& rho, DistanceKind kind, int subdivisions,
                                           ExecPolicy policy, bool refine) {
  DiagonalObjective objective(rho, kind);
  GridBest g = scan_simplex_grid(rho.dim(), subdivisions, policy, objective);
  if (!refine) return {g.value, diagonal_state(g.coords), Method::Grid};
  GridBest r = refine_simplex_min(rho.dim(), std::move(g.coords), g.value, 1.5 / subdivisions, objective);
  return {r.value, diagonal_state(r.coords), Method::Refine};
}

OptimizationResult qubit_trace_closed_form(const DensityMatrix& rho) {
  const BlochVector r = to_bloch(rho);
  return {std::sqrt(r.xy_norm2()), from_bloch({0.0, 0.0, r.rz}), Method::ClosedForm};
}

OptimizationResult qubit_fidelity_closed_form(const DensityMatrix& rho) {
  const BlochVector r = to_bloch(rho);
  const double planar = std::min(r.xy_norm2(), 1.0);
  const double value = 1.0 - (std::sqrt(2.0) / 2.0) * std::sqrt(1.0 + std::sqrt(1.0 - planar));
  // stationary point of the fidelity over s_z; at planar = 1 the state is
  // pure equatorial (rz = 0) and the limit s_z = rz applies
  double sz;
  if (1.0 - planar > 1e-30)
    sz = std::clamp(r.rz / std::sqrt(1.0 - planar), -1.0, 1.0);
  else
    sz = r.rz;
  return {std::max(value, 0.0), from_bloch({0.0, 0.0, sz}), Method::ClosedForm};
}

}  // namespace

MeasureId parse_measure(std::string_view name) {
  if (name == "l1") return MeasureId::L1;
  if (name == "trace") return MeasureId::Trace;
  if (name == "fidelity") return MeasureId::Fidelity;
  if (name == "relent" || name == "relative_entropy") return MeasureId::RelativeEntropy;
  throw std::invalid_argument("unknown measure '" + std::string(name) + "' (expected l1|trace|fidelity|relent)");
}

std::string measure_name(MeasureId id) {
  switch (id) {
    case MeasureId::L1:
      return "l1";
    case MeasureId::Trace:
      return "trace";
    case MeasureId::Fidelity:
      return "fidelity";
    default:
      return "relent";
  }
}

std::string method_name(Method m) {
  switch (m) {
    case Method::ClosedForm:
      return "closed_form";
    case Method::Grid:
      return "grid";
    default:
      return "refine";
  }
}

double c_l1(const DensityMatrix& rho) {
  double sum = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return sum;
}

std::optional<QutritClassState> detect_qutrit_class(const DensityMatrix& rho) {
  if (rho.dim() != 3) return std::nullopt;
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  const std::array<QutritClass, 3> tags{QutritClass::Y, QutritClass::X, QutritClass::Z};
  int nonzero = -1;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(rho(pairs[static_cast<std::size_t>(k)].first, pairs[static_cast<std::size_t>(k)].second)) >
        class_detect_tol) {
      if (nonzero >= 0) return std::nullopt;  // two coupled pairs
      nonzero = k;
    }
  }
  const int k = nonzero < 0 ? 1 : nonzero;  // fully diagonal counts as X with off = 0
  const auto [a, b] = pairs[static_cast<std::size_t>(k)];
  return make_qutrit_class(tags[static_cast<std::size_t>(k)],
                           {std::max(rho(0, 0).real(), 0.0), std::max(rho(1, 1).real(), 0.0),
                            std::max(rho(2, 2).real(), 0.0)},
                           rho(a, b));
}

OptimizationResult c_trace(const DensityMatrix& rho) {
  if (rho.dim() == 2) return qubit_trace_closed_form(rho);
  if (const auto cls = detect_qutrit_class(rho))
    return {2.0 * std::abs(cls->off_diagonal), dephase(rho), Method::ClosedForm};
  if (is_incoherent(rho, incoherent_short_circuit)) return {0.0, dephase(rho), Method::ClosedForm};
  const int n = default_subdivisions(rho.dim());
  return optimize_over_diagonals(rho, DistanceKind::Trace, n, ExecPolicy::Parallel, rho.dim() <= 3);
}

OptimizationResult c_fidelity(const DensityMatrix& rho) {
  if (rho.dim() == 2) return qubit_fidelity_closed_form(rho);
  if (is_incoherent(rho, incoherent_short_circuit)) return {0.0, dephase(rho), Method::ClosedForm};
  const int n = default_subdivisions(rho.dim());
  return optimize_over_diagonals(rho, DistanceKind::OneMinusSqrtFidelity, n, ExecPolicy::Parallel, rho.dim() <= 3);
}

double entropy_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 1e-12) s -= p * std::log2(p);
  return s;
}

double c_relative_entropy(const DensityMatrix& rho) {
  std::vector<double> diag(static_cast<std::size_t>(rho.dim()));
  for (int i = 0; i < rho.dim(); ++i) diag[static_cast<std::size_t>(i)] = rho(i, i).real();
  const auto dec = hermitian_eig(rho.matrix());
  return std::max(0.0, entropy_bits(diag) - entropy_bits(dec.eigenvalues));
}

double evaluate(MeasureId id, const DensityMatrix& rho) {
  switch (id) {
    case MeasureId::L1:
      return c_l1(rho);
    case MeasureId::Trace:
      return c_trace(rho).value;
    case MeasureId::Fidelity:
      return c_fidelity(rho).value;
    default:
      return c_relative_entropy(rho);
  }
}

std::array<double, 3> x_class_eigenvalues(const QutritClassState& rho, const std::array<double, 3>& delta) {
  if (rho.tag != QutritClass::X) throw std::invalid_argument("x_class_eigenvalues: state is not X-class");
  double sum = 0.0;
  for (double d : delta) {
    if (d < -1e-12) throw std::invalid_argument("x_class_eigenvalues: delta entry " + std::to_string(d) + " < 0");
    sum += d;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("x_class_eigenvalues: delta sums to " + std::to_string(sum));
  const double a11 = rho.diagonal[0], a22 = rho.diagonal[1];
  const double x = delta[0], y = delta[1];
  const double lam1 = a22 - y;
  const double shift = 2.0 * x + y - 2.0 * a11 - a22;
  const double radical = std::sqrt(shift * shift + 4.0 * std::norm(rho.off_diagonal));
  return {lam1, 0.5 * (y - a22) - 0.5 * radical, 0.5 * (y - a22) + 0.5 * radical};
}

DiagonalObjective::DiagonalObjective(const DensityMatrix& rho, DistanceKind kind) : rho_(&rho), kind_(kind) {
  if (kind == DistanceKind::OneMinusSqrtFidelity) sqrt_rho_ = psd_sqrt(rho.matrix());
}

double DiagonalObjective::operator()(std::span<const double> delta) const {
  const int d = rho_->dim();
  if (kind_ == DistanceKind::Trace) {
    ComplexMatrix diff = rho_->matrix();
    for (int i = 0; i < d; ++i) diff(i, i) -= delta[static_cast<std::size_t>(i)];
    const auto dec = hermitian_eig(diff);
    double sum = 0.0;
    for (double v : dec.eigenvalues) sum += std::abs(v);
    return sum;
  }
  // 1 - sqrt(F): tr sqrt(S diag(delta) S) with S = sqrt(rho)
  const ComplexMatrix& s = *sqrt_rho_;
  ComplexMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < d; ++k) acc += s(i, k) * delta[static_cast<std::size_t>(k)] * s(k, j);
      m(i, j) = acc;
    }
  const auto dec = hermitian_eig(m);
  double tr = 0.0;
  for (double v : dec.eigenvalues) tr += std::sqrt(std::max(v, 0.0));
  return 1.0 - std::clamp(tr, 0.0, 1.0);
}

double diagonal_distance(const DensityMatrix& rho, std::span<const double> delta, DistanceKind kind) {
  return DiagonalObjective(rho, kind)(delta);
}

OptimizationResult brute_force_min(const DensityMatrix& rho, DistanceKind kind, int grid_points, ExecPolicy policy) {
  if (rho.dim() != 2 && rho.dim() != 3)
    throw std::invalid_argument("brute_force_min: dim must be 2 or 3, got " + std::to_string(rho.dim()));
  if (grid_points < 100)
    throw std::invalid_argument("brute_force_min: grid_points must be >= 100, got " + std::to_string(grid_points));
  return optimize_over_diagonals(rho, kind, grid_points, policy, true);
}

}  // namespace coherence
