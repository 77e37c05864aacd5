#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "coherence/axioms.hpp"
#include "coherence/states.hpp"
#include "test_helpers.hpp"

using namespace coherence;
using Catch::Approx;

TEST_CASE("from_bloch", "[states]") {
  SECTION("maximally mixed") {
    const auto rho = from_bloch({0.0, 0.0, 0.0});
    REQUIRE(rho(0, 0).real() == Approx(0.5));
    REQUIRE(rho(1, 1).real() == Approx(0.5));
    REQUIRE(std::abs(rho(0, 1)) == Approx(0.0).margin(1e-15));
  }

  SECTION("pole state") {
    const auto rho = from_bloch({0.0, 0.0, 1.0});
    REQUIRE(rho(0, 0).real() == Approx(1.0));
    REQUIRE(rho(1, 1).real() == Approx(0.0).margin(1e-15));
  }

  SECTION("plus state has all entries 1/2") {
    const auto rho = from_bloch({1.0, 0.0, 0.0});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) REQUIRE(rho(i, j).real() == Approx(0.5).margin(1e-15));
  }

  SECTION("vectors outside the ball are rejected") {
    REQUIRE_THROWS_AS(from_bloch({0.8, 0.8, 0.8}), std::invalid_argument);
  }
}

TEST_CASE("to_bloch", "[states]") {
  SECTION("maximally mixed maps to the origin") {
    const BlochVector r = to_bloch(from_bloch({0.0, 0.0, 0.0}));
    REQUIRE(r.norm() == Approx(0.0).margin(1e-15));
  }

  SECTION("round trip on random vectors") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
      const BlochVector r = testutil::random_bloch(rng);
      const BlochVector back = to_bloch(from_bloch(r));
      REQUIRE(back.rx == Approx(r.rx).margin(1e-10));
      REQUIRE(back.ry == Approx(r.ry).margin(1e-10));
      REQUIRE(back.rz == Approx(r.rz).margin(1e-10));
    }
  }

  SECTION("post-measurement state of the fixed channel matches the component formulas") {
    // first outcome of K1 = diag(1, 1/2) on rx = ry = 1/2, rz = -sqrt(2)/2;
    // expected components evaluated directly from the ratio formulas
    const double rz = -std::sqrt(2.0) / 2.0;
    const double d1 = 1.0 * (1.0 + rz);        // |a|^2 (1 + rz)
    const double d2 = 0.25 * (1.0 - rz);       // |b|^2 (1 - rz)
    const double denom = d1 + d2;
    const double expect_x = 0.5 / denom;       // 2 Re(a b* (rx - i ry)) / denom with a=1, b=1/2
    const double expect_y = 0.5 / denom;
    const double expect_z = (d1 - d2) / denom;

    const auto outcomes = subselect(paper_counterexample_channel(), paper_counterexample_state());
    REQUIRE(outcomes[0].state.has_value());
    const BlochVector r1 = to_bloch(*outcomes[0].state);
    REQUIRE(r1.rx == Approx(expect_x).margin(1e-12));
    REQUIRE(r1.ry == Approx(expect_y).margin(1e-12));
    REQUIRE(r1.rz == Approx(expect_z).margin(1e-12));
  }

  SECTION("dim 3 is rejected") {
    REQUIRE_THROWS_AS(to_bloch(random_state(3, 1, Ensemble::HilbertSchmidt)), std::invalid_argument);
  }
}

TEST_CASE("dephase and is_incoherent", "[states]") {
  SECTION("diagonal input is a fixed point") {
    const auto rho = random_diagonal_state(3, 5);
    REQUIRE(dephase(rho).matrix().approx_equal(rho.matrix(), 1e-15));
  }

  SECTION("Bloch form: dephasing zeroes rx and ry") {
    const auto d = dephase(from_bloch({0.4, -0.3, 0.2}));
    const BlochVector r = to_bloch(d);
    REQUIRE(r.rx == Approx(0.0).margin(1e-15));
    REQUIRE(r.ry == Approx(0.0).margin(1e-15));
    REQUIRE(r.rz == Approx(0.2).margin(1e-12));
  }

  SECTION("X-class state dephases to its diagonal") {
    const auto s = make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, cplx(0.1, 0.05));
    const auto d = dephase(s.to_density());
    REQUIRE(d(0, 0).real() == Approx(0.5));
    REQUIRE(d(1, 1).real() == Approx(0.2));
    REQUIRE(d(2, 2).real() == Approx(0.3));
    REQUIRE(is_incoherent(d));
  }

  SECTION("idempotence and incoherence of the output") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
      const auto rho = random_state(2 + trial % 3, rng(), Ensemble::HilbertSchmidt);
      const auto d = dephase(rho);
      REQUIRE(is_incoherent(d));
      REQUIRE(dephase(d).matrix().approx_equal(d.matrix(), 0.0));
    }
  }

  SECTION("is_incoherent basics") {
    const double d[] = {0.3, 0.7};
    REQUIRE(is_incoherent(DensityMatrix::from_matrix(ComplexMatrix::diagonal(d))));
    REQUIRE_FALSE(is_incoherent(from_bloch({0.5, 0.0, 0.0})));
  }
}

TEST_CASE("random_state", "[states]") {
  SECTION("deterministic for a fixed seed") {
    const auto a = random_state(3, 777, Ensemble::HilbertSchmidt);
    const auto b = random_state(3, 777, Ensemble::HilbertSchmidt);
    REQUIRE(a.matrix().approx_equal(b.matrix(), 0.0));
  }

  SECTION("every draw is a valid state") {
    std::mt19937_64 seeds(1);
    for (int trial = 0; trial < 200; ++trial) {
      const int dim = 2 + trial % 3;
      const auto rho = random_state(dim, seeds(), Ensemble::HilbertSchmidt);
      REQUIRE(rho.matrix().is_hermitian(1e-12));
      REQUIRE(rho.matrix().trace().real() == Approx(1.0).margin(1e-12));
    }
  }

  SECTION("Bloch ball radius has the uniform-ball mean 3/4") {
    double total = 0.0;
    for (int i = 0; i < 10000; ++i) total += to_bloch(random_state(2, static_cast<std::uint64_t>(i), Ensemble::BlochBall)).norm();
    REQUIRE(total / 10000.0 == Approx(0.75).margin(0.02));
  }

  SECTION("bloch_ball needs dim 2") {
    REQUIRE_THROWS_AS(random_state(3, 1, Ensemble::BlochBall), std::invalid_argument);
  }
}

TEST_CASE("make_qutrit_class", "[states]") {
  SECTION("valid X-class state") {
    const auto s = make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, 0.1);
    const auto rho = s.to_density();
    REQUIRE(rho(0, 2).real() == Approx(0.1));
    REQUIRE(rho(1, 0).real() == Approx(0.0).margin(1e-15));
  }

  SECTION("PSD violation is rejected") {
    REQUIRE_THROWS_WITH(make_qutrit_class(QutritClass::X, {0.5, 0.2, 0.3}, 0.5),
                        Catch::Matchers::ContainsSubstring("not PSD"));
  }

  SECTION("zero off-diagonal gives an incoherent state") {
    const auto s = make_qutrit_class(QutritClass::Y, {0.4, 0.35, 0.25}, 0.0);
    REQUIRE(is_incoherent(s.to_density()));
  }

  SECTION("every random class state is a valid density matrix") {
    for (int trial = 0; trial < 200; ++trial) {
      const auto tag = static_cast<QutritClass>(trial % 3);
      const auto s = random_qutrit_class(tag, static_cast<std::uint64_t>(trial));
      const auto rho = s.to_density();  // from_matrix re-validates everything
      REQUIRE(rho.dim() == 3);
    }
  }
}
