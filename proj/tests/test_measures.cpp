#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "coherence/linalg.hpp"
#include "coherence/measures.hpp"
#include "coherence/axioms.hpp"
#include "coherence/seeding.hpp"
#include "test_helpers.hpp"

using namespace coherence;
using Catch::Approx;

namespace {

// Eq.-7-style closed form written out independently of the library
double qubit_fidelity_coherence_oracle(double rx, double ry) {
  const double planar = rx * rx + ry * ry;
  return 1.0 - (std::sqrt(2.0) / 2.0) * std::sqrt(1.0 + std::sqrt(std::max(0.0, 1.0 - planar)));
}

// permutes basis indices of a state: out(i,j) = rho(p(i), p(j))
DensityMatrix permute_basis(const DensityMatrix& rho, const std::vector<int>& p) {
  ComplexMatrix m(rho.dim());
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j) m(i, j) = rho(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace

TEST_CASE("c_l1", "[measures]") {
  SECTION("diagonal states have no coherence") {
    REQUIRE(c_l1(random_diagonal_state(3, 1)) == 0.0);
  }

  SECTION("qubit form sqrt(rx^2 + ry^2)") {
    REQUIRE(c_l1(from_bloch({0.3, 0.4, 0.2})) == Approx(0.5).margin(1e-12));
  }

  SECTION("X-class value 2|a13|") {
    const auto s = make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, 0.2);
    REQUIRE(c_l1(s.to_density()) == Approx(0.4).margin(1e-12));
  }
}

TEST_CASE("c_trace", "[measures]") {
  SECTION("qubit closed form against the 1-D grid oracle") {
    const auto rho = from_bloch({0.3, 0.4, 0.2});
    const auto r = c_trace(rho);
    REQUIRE(r.value == Approx(0.5).margin(1e-12));
    REQUIRE(r.method == Method::ClosedForm);

    // oracle: scan diag(q, 1-q) over 1e5 points, trace norm via the
    // matrix route
    const double oracle = testutil::qubit_line_min(
        [&](double q) {
          ComplexMatrix diff = rho.matrix();
          diff(0, 0) -= q;
          diff(1, 1) -= 1.0 - q;
          return trace_norm(diff);
        },
        100000);
    REQUIRE(r.value == Approx(oracle).margin(1e-6));

    // argmin is the dephased state
    const BlochVector s = to_bloch(r.argmin_state);
    REQUIRE(s.rx == 0.0);
    REQUIRE(s.rz == Approx(0.2).margin(1e-12));
  }

  SECTION("X-class closed form and argmin") {
    const auto s = make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, 0.15);
    const auto r = c_trace(s.to_density());
    REQUIRE(r.value == Approx(0.3).margin(1e-12));
    REQUIRE(r.method == Method::ClosedForm);
    REQUIRE(r.argmin_state(0, 0).real() == Approx(0.5).margin(1e-12));
    REQUIRE(r.argmin_state(1, 1).real() == Approx(0.2).margin(1e-12));
  }

  SECTION("Y and Z classes use their own off-diagonal") {
    const auto y = make_qutrit_class(QutritClass::Y, {0.5, 0.2, 0.3}, cplx(0.0, 0.12));
    REQUIRE(c_trace(y.to_density()).value == Approx(0.24).margin(1e-12));
    const auto z = make_qutrit_class(QutritClass::Z, {0.5, 0.2, 0.3}, cplx(0.1, -0.1));
    REQUIRE(c_trace(z.to_density()).value == Approx(2.0 * std::hypot(0.1, 0.1)).margin(1e-12));
  }

  SECTION("incoherent states measure zero at every dimension") {
    for (int dim = 2; dim <= 4; ++dim) {
      const auto r = c_trace(random_diagonal_state(dim, 17));
      REQUIRE(r.value == 0.0);
    }
  }

  SECTION("general qutrit path agrees with brute force") {
    // two coupled pairs -> no closed form; grid + refine
    ComplexMatrix m = ComplexMatrix::zero(3);
    m(0, 0) = 0.5;
    m(1, 1) = 0.3;
    m(2, 2) = 0.2;
    m(0, 1) = cplx(0.1, 0.02);
    m(1, 0) = std::conj(m(0, 1));
    m(1, 2) = cplx(-0.05, 0.08);
    m(2, 1) = std::conj(m(1, 2));
    const auto rho = DensityMatrix::from_matrix(std::move(m));
    const auto r = c_trace(rho);
    REQUIRE(r.method == Method::Refine);
    const auto bf = brute_force_min(rho, DistanceKind::Trace, 300);
    REQUIRE(r.value == Approx(bf.value).margin(1e-6));
    REQUIRE(is_incoherent(r.argmin_state));
    // value is reproduced by evaluating the distance at the argmin
    std::vector<double> diag(3);
    for (int i = 0; i < 3; ++i) diag[static_cast<std::size_t>(i)] = r.argmin_state(i, i).real();
    REQUIRE(diagonal_distance(rho, diag, DistanceKind::Trace) == Approx(r.value).margin(1e-9));
  }
}

TEST_CASE("c_fidelity", "[measures]") {
  SECTION("the fixed planar-radius value") {
    const auto r = c_fidelity(paper_counterexample_state());
    REQUIRE(r.value == Approx(1.0 - std::sqrt((2.0 + std::sqrt(2.0)) / 4.0)).margin(1e-12));
    REQUIRE(r.value == Approx(0.076120).margin(1e-6));
    REQUIRE(r.method == Method::ClosedForm);
  }

  SECTION("incoherent states measure zero") {
    REQUIRE(c_fidelity(random_diagonal_state(2, 3)).value == 0.0);
    REQUIRE(c_fidelity(random_diagonal_state(3, 3)).value == 0.0);
  }

  SECTION("pure plus state against the 1-D grid oracle") {
    const auto rho = from_bloch({1.0, 0.0, 0.0});
    const auto r = c_fidelity(rho);
    REQUIRE(r.value == Approx(1.0 - std::sqrt(0.5)).margin(1e-12));

    const double oracle = testutil::qubit_line_min(
        [&](double q) {
          const double d[] = {q, 1.0 - q};
          return 1.0 - std::sqrt(fidelity(rho.matrix(), ComplexMatrix::diagonal(d)));
        },
        100000);
    REQUIRE(r.value == Approx(oracle).margin(1e-6));
  }

  SECTION("argmin state attains the reported value") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
      const auto rho = from_bloch(testutil::random_bloch(rng));
      const auto r = c_fidelity(rho);
      REQUIRE(is_incoherent(r.argmin_state));
      const double direct = 1.0 - std::sqrt(fidelity(rho.matrix(), r.argmin_state.matrix()));
      REQUIRE(direct == Approx(r.value).margin(1e-9));
    }
  }

  SECTION("the optimal incoherent state beats plain dephasing off the equator") {
    std::mt19937_64 rng(57);
    int checked = 0;
    while (checked < 1000) {
      const BlochVector r = testutil::random_bloch(rng);
      if (std::abs(r.rz) < 1e-3 || r.xy_norm2() < 1e-6 || r.norm() > 1.0 - 1e-9) continue;
      ++checked;
      const auto rho = from_bloch(r);
      const auto opt = c_fidelity(rho);
      const double f_opt = fidelity(rho.matrix(), opt.argmin_state.matrix());
      const double f_deph = fidelity(rho.matrix(), dephase(rho).matrix());
      REQUIRE(f_opt > f_deph + 1e-12);
    }
  }
}

TEST_CASE("c_relative_entropy", "[measures]") {
  SECTION("diagonal states") { REQUIRE(c_relative_entropy(random_diagonal_state(3, 9)) == 0.0); }

  SECTION("pure plus state carries one bit") {
    REQUIRE(c_relative_entropy(from_bloch({1.0, 0.0, 0.0})) == Approx(1.0).margin(1e-10));
  }

  SECTION("half-polarized state") {
    // eigenvalues (1 +- 1/2)/2, diagonal (1/2, 1/2)
    const double expected =
        1.0 - (-(0.75 * std::log2(0.75)) - 0.25 * std::log2(0.25));
    REQUIRE(c_relative_entropy(from_bloch({0.5, 0.0, 0.0})) == Approx(expected).margin(1e-10));
  }
}

TEST_CASE("x_class_eigenvalues", "[measures]") {
  SECTION("difference with the dephased state collapses the radical") {
    const auto s = make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, 0.1);
    const auto lam = x_class_eigenvalues(s, {0.5, 0.2, 0.3});
    REQUIRE(lam[0] == Approx(0.0).margin(1e-14));
    REQUIRE(lam[1] == Approx(-0.1).margin(1e-14));
    REQUIRE(lam[2] == Approx(0.1).margin(1e-14));
  }

  SECTION("zero off-diagonal at the dephased point gives all zeros") {
    const auto s = make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, 0.0);
    const auto lam = x_class_eigenvalues(s, {0.5, 0.2, 0.3});
    for (double v : lam) REQUIRE(v == Approx(0.0).margin(1e-14));
  }

  SECTION("matches the eigensolver as a set on random pairs") {
    std::mt19937_64 rng(20240813);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto s = random_qutrit_class(QutritClass::X, rng());
      std::array<double, 3> delta{};
      double sum = 0.0;
      for (auto& e : delta) {
        e = -std::log(std::max(u(rng), 1e-300));
        sum += e;
      }
      for (auto& e : delta) e /= sum;

      auto lam = x_class_eigenvalues(s, delta);
      std::sort(lam.begin(), lam.end());

      ComplexMatrix diff = s.to_density().matrix();
      for (int i = 0; i < 3; ++i) diff(i, i) -= delta[static_cast<std::size_t>(i)];
      const auto dec = hermitian_eig(diff);
      for (int k = 0; k < 3; ++k)
        REQUIRE(lam[static_cast<std::size_t>(k)] == Approx(dec.eigenvalues[static_cast<std::size_t>(k)]).margin(1e-10));
    }
  }

  SECTION("wrong class and off-simplex deltas are rejected") {
    const auto y = make_qutrit_class(QutritClass::Y, {0.4, 0.3, 0.3}, 0.1);
    REQUIRE_THROWS_AS(x_class_eigenvalues(y, {0.4, 0.3, 0.3}), std::invalid_argument);
    const auto x = make_qutrit_class(QutritClass::X, {0.4, 0.3, 0.3}, 0.1);
    REQUIRE_THROWS_AS(x_class_eigenvalues(x, {0.9, 0.3, 0.3}), std::invalid_argument);
  }
}

TEST_CASE("brute_force_min", "[measures]") {
  SECTION("qubit trace distance matches the closed form") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
      const BlochVector r = testutil::random_bloch(rng);
      const auto bf = brute_force_min(from_bloch(r), DistanceKind::Trace, 1000);
      REQUIRE(bf.value == Approx(std::sqrt(r.xy_norm2())).margin(1e-6));
      REQUIRE(bf.method == Method::Refine);
    }
  }

  SECTION("qubit fidelity distance matches the closed form") {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 50; ++trial) {
      const BlochVector r = testutil::random_bloch(rng);
      const auto bf = brute_force_min(from_bloch(r), DistanceKind::OneMinusSqrtFidelity, 1000);
      REQUIRE(bf.value == Approx(qubit_fidelity_coherence_oracle(r.rx, r.ry)).margin(1e-6));
    }
  }

  SECTION("X-class argmin lands on the dephased state") {
    const auto s = make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, cplx(0.1, 0.07));
    const auto bf = brute_force_min(s.to_density(), DistanceKind::Trace, 150);
    double l1_dev = 0.0;
    for (int i = 0; i < 3; ++i)
      l1_dev += std::abs(bf.argmin_state(i, i).real() - s.diagonal[static_cast<std::size_t>(i)]);
    REQUIRE(l1_dev < 1e-4);
    REQUIRE(bf.value == Approx(2.0 * std::abs(cplx(0.1, 0.07))).margin(1e-6));
  }

  SECTION("argument validation") {
    REQUIRE_THROWS_AS(brute_force_min(random_state(4, 1, Ensemble::HilbertSchmidt), DistanceKind::Trace, 200),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(brute_force_min(from_bloch({0.1, 0.0, 0.0}), DistanceKind::Trace, 50), std::invalid_argument);
  }
}

TEST_CASE("measure cross identities", "[measures]") {
  SECTION("trace and l1 coincide on qubits") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto rho = from_bloch(testutil::random_bloch(rng));
      REQUIRE(c_trace(rho).value == Approx(c_l1(rho)).margin(1e-10));
    }
  }

  SECTION("trace and l1 coincide on class qutrits") {
    for (int trial = 0; trial < 1000; ++trial) {
      const auto tag = static_cast<QutritClass>(trial % 3);
      const auto rho = random_qutrit_class(tag, sub_seed(5150, static_cast<std::uint64_t>(trial))).to_density();
      REQUIRE(c_trace(rho).value == Approx(c_l1(rho)).margin(1e-10));
    }
  }

  SECTION("qubit fidelity closed form equals brute force") {
    for (int trial = 0; trial < 200; ++trial) {
      const auto rho = random_state(2, sub_seed(23, static_cast<std::uint64_t>(trial)), Ensemble::BlochBall);
      const auto closed = c_fidelity(rho);
      const auto bf = brute_force_min(rho, DistanceKind::OneMinusSqrtFidelity, 500);
      REQUIRE(closed.value == Approx(bf.value).margin(1e-6));
    }
  }

  SECTION("all four measures vanish on incoherent states") {
    for (int dim = 2; dim <= 3; ++dim)
      for (int trial = 0; trial < 20; ++trial) {
        const auto delta = random_diagonal_state(dim, sub_seed(37, static_cast<std::uint64_t>(trial)));
        for (const auto id : {MeasureId::L1, MeasureId::Trace, MeasureId::Fidelity, MeasureId::RelativeEntropy})
          REQUIRE(evaluate(id, delta) <= 1e-9);
      }
  }

  SECTION("measures are invariant under basis permutations") {
    const std::vector<int> perm{2, 0, 1};
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = random_state(3, sub_seed(41, static_cast<std::uint64_t>(trial)), Ensemble::HilbertSchmidt);
      const auto permuted = permute_basis(rho, perm);
      REQUIRE(c_l1(permuted) == Approx(c_l1(rho)).margin(1e-10));
      REQUIRE(c_relative_entropy(permuted) == Approx(c_relative_entropy(rho)).margin(1e-9));
      REQUIRE(c_trace(permuted).value == Approx(c_trace(rho).value).margin(1e-7));
      REQUIRE(c_fidelity(permuted).value == Approx(c_fidelity(rho).value).margin(1e-7));
    }
  }
}

TEST_CASE("serial and parallel scans are identical", "[measures][parallel]") {
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_state(3, sub_seed(83, static_cast<std::uint64_t>(trial)), Ensemble::HilbertSchmidt);
    for (const auto kind : {DistanceKind::Trace, DistanceKind::OneMinusSqrtFidelity}) {
      DiagonalObjective obj(rho, kind);
      const auto serial = scan_simplex_grid(3, 90, ExecPolicy::Serial, obj);
      const auto parallel = scan_simplex_grid(3, 90, ExecPolicy::Parallel, obj);
      REQUIRE(serial.value == parallel.value);
      REQUIRE(serial.flat_index == parallel.flat_index);

      const auto bs = brute_force_min(rho, kind, 120, ExecPolicy::Serial);
      const auto bp = brute_force_min(rho, kind, 120, ExecPolicy::Parallel);
      REQUIRE(bs.value == bp.value);
    }
  }
}

TEST_CASE("simplex grid enumeration", "[measures]") {
  REQUIRE(simplex_grid_size(2, 100) == 101);
  REQUIRE(simplex_grid_size(3, 100) == 5151);

  // decode is lexicographic and exhaustive
  int ic[3];
  simplex_grid_decode(3, 4, 0, std::span<int>(ic, 3));
  REQUIRE((ic[0] == 0 && ic[1] == 0 && ic[2] == 4));
  simplex_grid_decode(3, 4, 14, std::span<int>(ic, 3));
  REQUIRE((ic[0] + ic[1] + ic[2] == 4));
  std::array<int, 3> prev{-1, -1, -1};
  for (std::size_t f = 0; f < simplex_grid_size(3, 4); ++f) {
    simplex_grid_decode(3, 4, f, std::span<int>(ic, 3));
    REQUIRE(ic[0] + ic[1] + ic[2] == 4);
    const std::array<int, 3> cur{ic[0], ic[1], ic[2]};
    REQUIRE(cur > prev);  // strictly increasing lexicographic order
    prev = cur;
  }
}
