#include "coherence/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace coherence {

namespace {

// Sorts eigenpairs ascending by value, permuting columns accordingly.
void sort_pairs(std::vector<double>& vals, ComplexMatrix& vecs) {
  const int n = static_cast<int>(vals.size());
  std::vector<int> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  std::vector<double> sv(vals.size());
  ComplexMatrix sm(n);
  for (int k = 0; k < n; ++k) {
    sv[k] = vals[order[k]];
    for (int i = 0; i < n; ++i) sm(i, k) = vecs(i, order[k]);
  }
  vals = std::move(sv);
  vecs = std::move(sm);
}

EigenDecomposition eig2(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const cplx b = m(0, 1);
  const double mean = 0.5 * (a + d);
  const double h = 0.5 * (a - d);
  const double r = std::hypot(h, std::abs(b));

  ComplexMatrix v(2);
  // null vector of (M - lambda_max I); pick the better-conditioned of the
  // two candidate rows
  cplx p, q;
  if (h >= 0.0) {
    p = cplx(r + h);
    q = std::conj(b);
  } else {
    p = b;
    q = cplx(r - h);
  }
  double norm = std::sqrt(std::norm(p) + std::norm(q));
  if (norm == 0.0) {  // diagonal with a == d
    p = 1.0;
    q = 0.0;
    norm = 1.0;
  }
  p /= norm;
  q /= norm;
  // column 0: eigenvector of mean - r, column 1: of mean + r
  v(0, 0) = -std::conj(q);
  v(1, 0) = std::conj(p);
  v(0, 1) = p;
  v(1, 1) = q;
  return {{mean - r, mean + r}, v};
}

// Analytic eigenvalues of a 3x3 Hermitian matrix (trigonometric solution
// of the characteristic cubic). Ascending.
std::array<double, 3> eig3_values(const ComplexMatrix& m) {
  const double p1 = std::norm(m(0, 1)) + std::norm(m(0, 2)) + std::norm(m(1, 2));
  const double q = m.trace().real() / 3.0;
  const double d0 = m(0, 0).real() - q;
  const double d1 = m(1, 1).real() - q;
  const double d2 = m(2, 2).real() - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  if (p2 <= 0.0) return {q, q, q};  // scalar matrix
  const double p = std::sqrt(p2 / 6.0);

  // r = det(B)/2 with B = (M - qI)/p; Hermitian determinant is real
  const cplx b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
  const cplx b01 = m(0, 1) / p, b02 = m(0, 2) / p, b12 = m(1, 2) / p;
  const cplx det = b00 * (b11 * b22 - b12 * std::conj(b12)) - b01 * (std::conj(b01) * b22 - b12 * std::conj(b02)) +
                   b02 * (std::conj(b01) * std::conj(b12) - b11 * std::conj(b02));
  const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);

  const double phi = std::acos(r) / 3.0;
  const double two_pi_3 = 2.0 * std::numbers::pi / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + two_pi_3);
  return {lo, 3.0 * q - lo - hi, hi};
}

// Bilinear (non-conjugated) cross product; the result annihilates both
// arguments under the plain row-times-vector product.
std::array<cplx, 3> cross(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm3(const std::array<cplx, 3>& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

// Null vector of (M - lambda I) from the largest cross product of two
// rows. Returns false when every cross product is tiny (degenerate
// eigenvalue), in which case the caller falls back to Jacobi.
bool null_vector3(const ComplexMatrix& m, double lambda, double scale, std::array<cplx, 3>& out) {
  std::array<std::array<cplx, 3>, 3> row;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) row[i][j] = m(i, j) - (i == j ? cplx(lambda) : cplx(0.0));
  std::array<cplx, 3> best{};
  double best_norm = -1.0;
  for (int i = 0; i < 3; ++i) {
    const auto c = cross(row[i], row[(i + 1) % 3]);
    const double n = norm3(c);
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  if (best_norm <= 1e-6 * scale * scale) return false;
  for (auto& e : best) e /= best_norm;
  out = best;
  return true;
}

// Cyclic Jacobi for Hermitian matrices of any supported dim. Working
// copy is re-symmetrized after every rotation so roundoff cannot drift
// it away from Hermitian.
EigenDecomposition jacobi_eig(const ComplexMatrix& input) {
  const int n = input.dim();
  ComplexMatrix a = input;
  for (int i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (int j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= stop) continue;
        const cplx phase = a(p, q) / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        // zero condition for this rotation convention: t^2 - 2 tau t - 1 = 0,
        // stable root of smallest magnitude
        const double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // unitary U: U(p,p)=c, U(p,q)=-s, U(q,p)=s*conj(phase), U(q,q)=c*conj(phase)
        const cplx upq = -s, uqp = s * std::conj(phase), uqq = c * std::conj(phase);
        for (int i = 0; i < n; ++i) {  // A <- A U
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * c + aiq * uqp;
          a(i, q) = aip * upq + aiq * uqq;
        }
        for (int j = 0; j < n; ++j) {  // A <- U^dagger A
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj + std::conj(uqp) * aqj;
          a(q, j) = std::conj(upq) * apj + std::conj(uqq) * aqj;
        }
        for (int i = 0; i < n; ++i) {  // V <- V U
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * c + viq * uqp;
          v(i, q) = vip * upq + viq * uqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = a(i, i).real();
  EigenDecomposition dec{std::move(vals), std::move(v)};
  sort_pairs(dec.eigenvalues, dec.eigenvectors);
  return dec;
}

EigenDecomposition eig3(const ComplexMatrix& m) {
  const auto vals = eig3_values(m);
  const double scale = std::max(m.max_abs(), 1e-300);

  ComplexMatrix v(3);
  bool ok = true;
  std::array<std::array<cplx, 3>, 3> cols;
  for (int k = 0; k < 3 && ok; ++k) ok = null_vector3(m, vals[static_cast<std::size_t>(k)], scale, cols[static_cast<std::size_t>(k)]);

  if (ok) {
    // Gram-Schmidt; the third column comes from the orthogonal complement
    auto& c0 = cols[0];
    auto& c1 = cols[1];
    cplx ip = 0.0;
    for (int i = 0; i < 3; ++i) ip += std::conj(c0[i]) * c1[i];
    for (int i = 0; i < 3; ++i) c1[i] -= ip * c0[i];
    const double n1 = norm3(c1);
    if (n1 < 1e-6) {
      ok = false;
    } else {
      for (auto& e : c1) e /= n1;
      auto c2 = cross(c0, c1);
      for (auto& e : c2) e = std::conj(e);
      for (int i = 0; i < 3; ++i) {
        v(i, 0) = c0[i];
        v(i, 1) = c1[i];
        v(i, 2) = c2[i];
      }
    }
  }

  if (ok) {
    // residual check: ||M v_k - lambda_k v_k|| per column
    double resid = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) {
        cplx r = -vals[static_cast<std::size_t>(k)] * v(i, k);
        for (int j = 0; j < 3; ++j) r += m(i, j) * v(j, k);
        resid = std::max(resid, std::abs(r));
      }
    if (resid <= 1e-11 * std::max(1.0, scale))
      return {{vals[0], vals[1], vals[2]}, v};
  }
  return jacobi_eig(m);  // degenerate or ill-conditioned analytic path
}

ComplexMatrix diag_transform(const EigenDecomposition& dec, const std::vector<double>& d) {
  const int n = dec.eigenvectors.dim();
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += dec.eigenvectors(i, k) * d[static_cast<std::size_t>(k)] * std::conj(dec.eigenvectors(j, k));
      out(i, j) = acc;
    }
  return out;
}

}  // namespace

ComplexMatrix EigenDecomposition::reconstruct() const { return diag_transform(*this, eigenvalues); }

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  const double gap = m.hermiticity_gap();
  if (gap > tol::hermitian_input)
    throw std::invalid_argument("hermitian_eig: input not Hermitian, max |M - M^dagger| entry = " + std::to_string(gap));
  switch (m.dim()) {
    case 2:
      return eig2(m);
    case 3:
      return eig3(m);
    default:
      return jacobi_eig(m);
  }
}

double trace_norm(const ComplexMatrix& m) {
  if (m.is_hermitian(tol::hermitian_input)) {
    const auto dec = hermitian_eig(m);
    double sum = 0.0;
    for (double v : dec.eigenvalues) sum += std::abs(v);
    return sum;
  }
  // general case: singular values from M^dagger M
  const auto dec = hermitian_eig(m.adjoint() * m);
  double sum = 0.0;
  for (double v : dec.eigenvalues) sum += std::sqrt(std::max(v, 0.0));
  return sum;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  auto dec = hermitian_eig(m);
  std::vector<double> roots(dec.eigenvalues.size());
  for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
    const double v = dec.eigenvalues[k];
    if (v < tol::psd_reject)
      throw std::invalid_argument("psd_sqrt: matrix not PSD, eigenvalue " + std::to_string(v));
    roots[k] = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return diag_transform(dec, roots);
}

double fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("fidelity: dimension mismatch " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  const ComplexMatrix root = psd_sqrt(a);
  const auto dec = hermitian_eig(root * b * root);
  double tr = 0.0;
  for (double v : dec.eigenvalues) tr += std::sqrt(std::max(v, 0.0));
  return std::clamp(tr * tr, 0.0, 1.0);
}

}  // namespace coherence
