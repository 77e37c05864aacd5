#include "coherence/channels.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "coherence/seeding.hpp"

namespace coherence {

namespace {
constexpr double completeness_tol = 1e-9;
constexpr double nonzero_tol = 1e-12;
constexpr double null_outcome_tol = 1e-12;

void require_usable(const KrausChannel& channel, const DensityMatrix& rho, const char* op) {
  if (channel.dim() != rho.dim())
    throw std::invalid_argument(std::string(op) + ": channel dim " + std::to_string(channel.dim()) +
                                " vs state dim " + std::to_string(rho.dim()));
  const auto v = validate(channel);
  if (!v.complete)
    throw std::invalid_argument(std::string(op) + ": channel '" + channel.label +
                                "' incomplete, |sum K^dagger K - I| = " + std::to_string(v.completeness_error));
}
}  // namespace

int KrausChannel::dim() const {
  if (operators.empty()) throw std::invalid_argument("KrausChannel: empty operator list");
  return operators.front().dim();
}

ChannelValidation validate(const KrausChannel& channel) {
  if (channel.operators.empty()) throw std::invalid_argument("validate: empty operator list");
  const int d = channel.operators.front().dim();
  for (const auto& k : channel.operators)
    if (k.dim() != d) throw std::invalid_argument("validate: mixed operator dimensions");

  ComplexMatrix sum = ComplexMatrix::zero(d);
  for (const auto& k : channel.operators) sum = sum + k.adjoint() * k;
  double err = 0.0;
  const ComplexMatrix id = ComplexMatrix::identity(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) err = std::max(err, std::abs(sum(i, j) - id(i, j)));

  bool incoherent = true;
  for (const auto& k : channel.operators)
    for (int j = 0; j < d && incoherent; ++j) {
      int nonzeros = 0;
      for (int i = 0; i < d; ++i)
        if (std::abs(k(i, j)) > nonzero_tol) ++nonzeros;
      if (nonzeros > 1) incoherent = false;
    }

  return {err <= completeness_tol, incoherent, err};
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  require_usable(channel, rho, "apply");
  const int d = rho.dim();
  ComplexMatrix out = ComplexMatrix::zero(d);
  for (const auto& k : channel.operators) out = out + k * rho.matrix() * k.adjoint();
  for (int i = 0; i < d; ++i) out(i, i) = out(i, i).real();
  return DensityMatrix::from_matrix(std::move(out));
}

std::vector<ChannelOutcome> subselect(const KrausChannel& channel, const DensityMatrix& rho) {
  require_usable(channel, rho, "subselect");
  std::vector<ChannelOutcome> outcomes;
  outcomes.reserve(channel.operators.size());
  int index = 0;
  for (const auto& k : channel.operators) {
    ComplexMatrix m = k * rho.matrix() * k.adjoint();
    const double p = m.trace().real();
    ChannelOutcome out;
    out.outcome_index = index++;
    out.probability = std::max(p, 0.0);
    if (p >= null_outcome_tol) {
      m = cplx(1.0 / p) * m;
      for (int i = 0; i < m.dim(); ++i) m(i, i) = m(i, i).real();
      out.state = DensityMatrix::from_matrix(std::move(m));
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

KrausChannel amplitude_damping_like(cplx a, cplx b, cplx c) {
  const double a2 = std::norm(a);
  const double bc = std::norm(b) + std::norm(c);
  if (std::abs(a2 - 1.0) > completeness_tol || std::abs(bc - 1.0) > completeness_tol)
    throw std::invalid_argument("amplitude_damping_like: need |a|^2 = 1 and |b|^2 + |c|^2 = 1, got " +
                                std::to_string(a2) + " and " + std::to_string(bc));
  ComplexMatrix k1(2), k2(2);
  k1(0, 0) = a;
  k1(1, 1) = b;
  k2(0, 1) = c;
  return {{std::move(k1), std::move(k2)}, "amplitude_damping_like"};
}

KrausChannel identity_channel(int dim) { return {{ComplexMatrix::identity(dim)}, "identity"}; }

KrausChannel full_dephasing_channel(int dim) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    ComplexMatrix p(dim);
    p(i, i) = 1.0;
    ops.push_back(std::move(p));
  }
  return {std::move(ops), "full_dephasing"};
}

KrausChannel random_incoherent_channel(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed) ^ 0xc4a05ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ComplexMatrix k1(dim), k2(dim);
  // random cyclic shift covers the identity permutation as well
  const int shift = static_cast<int>(rng() % static_cast<std::uint64_t>(dim));
  for (int j = 0; j < dim; ++j) {
    const double w = u(rng);
    const double ph1 = 2.0 * std::numbers::pi * u(rng);
    const double ph2 = 2.0 * std::numbers::pi * u(rng);
    k1(j, j) = std::polar(std::sqrt(w), ph1);
    k2((j + shift) % dim, j) = std::polar(std::sqrt(1.0 - w), ph2);
  }
  return {{std::move(k1), std::move(k2)}, "random_incoherent"};
}

KrausChannel random_unitary_channel(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed) ^ 0x0a17aULL);
  std::normal_distribution<double> n(0.0, 1.0);
  // Gram-Schmidt on a random complex Gaussian matrix
  ComplexMatrix g(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cplx(n(rng), n(rng));
  for (int col = 0; col < dim; ++col) {
    for (int prev = 0; prev < col; ++prev) {
      cplx ip = 0.0;
      for (int i = 0; i < dim; ++i) ip += std::conj(g(i, prev)) * g(i, col);
      for (int i = 0; i < dim; ++i) g(i, col) -= ip * g(i, prev);
    }
    double norm = 0.0;
    for (int i = 0; i < dim; ++i) norm += std::norm(g(i, col));
    norm = std::sqrt(norm);
    for (int i = 0; i < dim; ++i) g(i, col) /= norm;
  }
  return {{std::move(g)}, "random_unitary"};
}

}  // namespace coherence
