#include "coherence/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "coherence/seeding.hpp"

namespace coherence {

namespace {
constexpr double state_tol = 1e-9;

std::mt19937_64 engine_for(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }
}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  const double gap = m.hermiticity_gap();
  if (gap > state_tol)
    throw std::invalid_argument("DensityMatrix: not Hermitian, max |M - M^dagger| = " + std::to_string(gap));
  const cplx tr = m.trace();
  if (std::abs(tr - cplx(1.0)) > state_tol)
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  const auto dec = hermitian_eig(m);
  if (dec.eigenvalues.front() < -state_tol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(dec.eigenvalues.front()));
  return DensityMatrix(std::move(m));
}

double BlochVector::norm() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }

DensityMatrix from_bloch(const BlochVector& r) {
  if (r.norm() > 1.0 + state_tol)
    throw std::invalid_argument("from_bloch: |r| = " + std::to_string(r.norm()) + " > 1, unphysical");
  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + r.rz);
  m(1, 1) = 0.5 * (1.0 - r.rz);
  m(0, 1) = 0.5 * cplx(r.rx, -r.ry);
  m(1, 0) = 0.5 * cplx(r.rx, r.ry);
  return DensityMatrix::from_matrix(std::move(m));
}

BlochVector to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("to_bloch: need dim 2, got " + std::to_string(rho.dim()));
  BlochVector r;
  r.rx = 2.0 * rho(0, 1).real();
  r.ry = -2.0 * rho(0, 1).imag();
  r.rz = (rho(0, 0) - rho(1, 1)).real();
  return r;
}

DensityMatrix dephase(const DensityMatrix& rho) {
  ComplexMatrix m(rho.dim());
  // trace and positivity are inherited from rho, so this always validates
  for (int i = 0; i < rho.dim(); ++i) m(i, i) = rho(i, i).real();
  return DensityMatrix::from_matrix(std::move(m));
}

bool is_incoherent(const DensityMatrix& rho, double tol) {
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j && std::abs(rho(i, j)) > tol) return false;
  return true;
}

DensityMatrix random_state(int dim, std::uint64_t seed, Ensemble ensemble) {
  auto rng = engine_for(seed);
  if (ensemble == Ensemble::BlochBall) {
    if (dim != 2) throw std::invalid_argument("random_state: bloch_ball ensemble requires dim 2");
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
      const double x = u(rng), y = u(rng), z = u(rng);
      if (x * x + y * y + z * z <= 1.0) return from_bloch({x, y, z});
    }
  }
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(n(rng), n(rng));
  ComplexMatrix m = g * g.adjoint();
  const double tr = m.trace().real();
  m = cplx(1.0 / tr) * m;
  for (int i = 0; i < dim; ++i) m(i, i) = m(i, i).real();  // drop roundoff imaginaries
  return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix random_diagonal_state(int dim, std::uint64_t seed) {
  auto rng = engine_for(splitmix64(seed) ^ 0xd1a60a11ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> d(static_cast<std::size_t>(dim));
  double sum = 0.0;
  for (auto& e : d) {
    e = -std::log(std::max(u(rng), 1e-300));  // exponential spacings => uniform on the simplex
    sum += e;
  }
  for (auto& e : d) e /= sum;
  return DensityMatrix::from_matrix(ComplexMatrix::diagonal(d));
}

std::pair<int, int> QutritClassState::coupled_indices() const {
  switch (tag) {
    case QutritClass::X:
      return {0, 2};
    case QutritClass::Y:
      return {0, 1};
    default:
      return {1, 2};
  }
}

DensityMatrix QutritClassState::to_density() const {
  ComplexMatrix m(3);
  for (int i = 0; i < 3; ++i) m(i, i) = diagonal[static_cast<std::size_t>(i)];
  const auto [a, b] = coupled_indices();
  m(a, b) = off_diagonal;
  m(b, a) = std::conj(off_diagonal);
  return DensityMatrix::from_matrix(std::move(m));
}

QutritClassState make_qutrit_class(QutritClass tag, const std::array<double, 3>& diagonal, cplx off_diagonal) {
  double sum = 0.0;
  for (double d : diagonal) {
    if (d < 0.0) throw std::invalid_argument("make_qutrit_class: negative diagonal entry " + std::to_string(d));
    sum += d;
  }
  if (std::abs(sum - 1.0) > state_tol)
    throw std::invalid_argument("make_qutrit_class: diagonal sums to " + std::to_string(sum) + ", not 1");
  QutritClassState s{tag, diagonal, off_diagonal};
  const auto [a, b] = s.coupled_indices();
  const double bound = diagonal[static_cast<std::size_t>(a)] * diagonal[static_cast<std::size_t>(b)];
  if (std::norm(off_diagonal) > bound + state_tol)
    throw std::invalid_argument("make_qutrit_class: |off|^2 = " + std::to_string(std::norm(off_diagonal)) +
                                " exceeds coupled diagonal product " + std::to_string(bound) + ", not PSD");
  return s;
}

QutritClassState random_qutrit_class(QutritClass tag, std::uint64_t seed) {
  auto rng = engine_for(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 3> d;
  double sum = 0.0;
  for (auto& e : d) {
    e = -std::log(std::max(u(rng), 1e-300));
    sum += e;
  }
  for (auto& e : d) e /= sum;
  QutritClassState probe{tag, d, 0.0};
  const auto [a, b] = probe.coupled_indices();
  // magnitude strictly inside the PSD disc, random phase
  const double mag = 0.97 * u(rng) * std::sqrt(d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(b)]);
  const double phase = 2.0 * std::numbers::pi * u(rng);
  return make_qutrit_class(tag, d, std::polar(mag, phase));
}

}  // namespace coherence
