#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coherence {

using cplx = std::complex<double>;

// Dense complex matrix, row-major, for dimensions 2..8. Everything is a
// plain value; copies are cheap at these sizes. There is deliberately no
// operator== -- comparisons must state an absolute tolerance.
class ComplexMatrix {
public:
  static constexpr int min_dim = 2;
  static constexpr int max_dim = 8;

  explicit ComplexMatrix(int dim) : dim_(checked_dim(dim)), entries_(static_cast<std::size_t>(dim) * dim) {}

  ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(checked_dim(dim)), entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(dim_) * dim_)
      throw std::invalid_argument("ComplexMatrix: entries must be dim*dim, got " + std::to_string(entries_.size()));
  }

  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }

  int dim() const { return dim_; }

  cplx& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
  const cplx& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  // largest entrywise |M - M^dagger|
  double hermiticity_gap() const {
    double g = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j) g = std::max(g, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return g;
  }

  bool is_hermitian(double tol) const { return hermiticity_gap() <= tol; }

  bool approx_equal(const ComplexMatrix& other, double tol) const {
    if (other.dim_ != dim_) return false;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (std::abs(entries_[k] - other.entries_[k]) > tol) return false;
    return true;
  }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "operator+");
    ComplexMatrix out(a.dim_);
    for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] = a.entries_[k] + b.entries_[k];
    return out;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "operator-");
    ComplexMatrix out(a.dim_);
    for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] = a.entries_[k] - b.entries_[k];
    return out;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b, "operator*");
    const int n = a.dim_;
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix out(a.dim_);
    for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] = s * a.entries_[k];
    return out;
  }

private:
  static int checked_dim(int dim) {
    if (dim < min_dim || dim > max_dim)
      throw std::invalid_argument("ComplexMatrix: dim must be in [2,8], got " + std::to_string(dim));
    return dim;
  }

  static void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim_ != b.dim_)
      throw std::invalid_argument(std::string("ComplexMatrix ") + op + ": dimension mismatch " +
                                  std::to_string(a.dim_) + " vs " + std::to_string(b.dim_));
  }

  int dim_;
  std::vector<cplx> entries_;
};

}  // namespace coherence
