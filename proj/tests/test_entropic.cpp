#include <doctest.h>

#include <random>

#include "cavur/entropic.hpp"
#include "cavur/protocol.hpp"
#include "cavur/random_states.hpp"
#include "test_support.hpp"

using namespace cavur;
using namespace cavur::testing;

namespace {

GameConfig inertial_config() {
  GameConfig cfg;
  cfg.u_b = 0.0;
  cfg.u_c = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("conditional entropy") {
  CHECK(conditional_entropy(bell_state(), 1) ==
        doctest::Approx(-1.0).epsilon(1e-12));

  std::mt19937_64 rng(5);
  const DensityMatrix a = random_density_matrix(rng, {2});
  const DensityMatrix b = random_density_matrix(rng, {2});
  CHECK(conditional_entropy(tensor(a, b), 1) ==
        doctest::Approx(von_neumann_entropy(a)).epsilon(1e-12));

  CHECK(conditional_entropy(DensityMatrix::maximally_mixed({2, 2}), 1) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measured conditional entropy") {
  const MeasurementBasis z = MeasurementBasis::sigma_z();

  std::mt19937_64 rng(17);
  const DensityMatrix rho_b = random_density_matrix(rng, {2});
  const DensityMatrix certain = tensor(basis_state(0, {2}), rho_b);
  CHECK(measured_conditional_entropy(certain, z, 0, 1) ==
        doctest::Approx(0.0).epsilon(1e-11));

  CHECK(measured_conditional_entropy(bell_state(), z, 0, 1) ==
        doctest::Approx(0.0).epsilon(1e-11));

  SUBCASE("non-negativity on random states") {
    for (int trial = 0; trial < 25; ++trial) {
      const DensityMatrix rho = random_density_matrix(rng, {2, 2});
      const MeasurementBasis basis = random_basis(rng, 2);
      CHECK(measured_conditional_entropy(rho, basis, 0, 1) >= -1e-11);
    }
  }

  SUBCASE("evolved W state at the inertial point") {
    const DensityMatrix rho = evolve_protocol(inertial_config());
    CHECK(measured_conditional_entropy(rho, MeasurementBasis::sigma_x(), 0,
                                       2) ==
          doctest::Approx(kHsxCInertial).epsilon(1e-12));
  }
}

TEST_CASE("maximal eigenvector overlap") {
  const auto x = MeasurementBasis::sigma_x();
  const auto y = MeasurementBasis::sigma_y();
  const auto z = MeasurementBasis::sigma_z();
  CHECK(max_overlap(x, x) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_overlap(x, y) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(max_overlap(z, x) == doctest::Approx(0.5).epsilon(1e-14));

  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(3);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(3);
  e0(0) = e1(1) = e2(2) = 1.0;
  const MeasurementBasis qutrit({e0, e1, e2}, "qutrit");
  CHECK_THROWS_AS(max_overlap(x, qutrit), std::invalid_argument);
}

TEST_CASE("Holevo quantity") {
  const MeasurementBasis z = MeasurementBasis::sigma_z();

  std::mt19937_64 rng(29);
  const DensityMatrix a = random_density_matrix(rng, {2});
  const DensityMatrix b = random_density_matrix(rng, {2});
  CHECK(holevo_quantity(tensor(a, b), z, 0, 1).value ==
        doctest::Approx(0.0).epsilon(1e-11));

  SUBCASE("Bell state holds one full bit") {
    const HolevoReport report = holevo_quantity(bell_state(), z, 0, 1);
    CHECK(report.value == doctest::Approx(1.0).epsilon(1e-11));
    REQUIRE(report.conditional_memory_states.size() == 2);
    for (const auto& state : report.conditional_memory_states) {
      REQUIRE(state.has_value());
      CHECK(von_neumann_entropy(*state) == doctest::Approx(0.0).epsilon(1e-10));
    }
  }

  SUBCASE("deterministic outcome leaves the skipped slot empty") {
    const DensityMatrix certain = tensor(basis_state(0, {2}), b);
    const HolevoReport report = holevo_quantity(certain, z, 0, 1);
    CHECK(report.value == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(report.conditional_memory_states.size() == 2);
    CHECK(report.conditional_memory_states[0].has_value());
    CHECK(!report.conditional_memory_states[1].has_value());
  }

  SUBCASE("evolved W state: value and decomposition identity") {
    const DensityMatrix rho = evolve_protocol(inertial_config());
    const auto x = MeasurementBasis::sigma_x();
    const HolevoReport report = holevo_quantity(rho, x, 0, 2);
    CHECK(report.value == doctest::Approx(kJCsxInertial).epsilon(1e-12));
    // H(M|E) = H(M) - J(E|M) with H(M) the outcome Shannon entropy.
    const double h_m = outcome_probs(rho, x, 0).entropy();
    const double h_cond = measured_conditional_entropy(rho, x, 0, 2);
    CHECK(std::abs(h_cond - (h_m - report.value)) <= 1e-12);
  }

  SUBCASE("bounds on random states") {
    for (int trial = 0; trial < 25; ++trial) {
      const DensityMatrix rho = random_density_matrix(rng, {2, 2});
      const MeasurementBasis basis = random_basis(rng, 2);
      const double j = holevo_quantity(rho, basis, 0, 1).value;
      CHECK(j >= -1e-11);
      CHECK(j <= von_neumann_entropy(partial_trace(rho, {1})) + 1e-10);
    }
  }
}

TEST_CASE("bipartite uncertainty relation") {
  const auto z = MeasurementBasis::sigma_z();
  const auto x = MeasurementBasis::sigma_x();

  SUBCASE("maximally mixed pair") {
    const auto reports =
        check_bipartite(DensityMatrix::maximally_mixed({2, 2}), z, x, 1);
    CHECK(reports.memory_bound.lhs() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(reports.memory_bound.bound == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(reports.memory_bound.slack == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(reports.memory_bound.overlap_c ==
          doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("Bell state saturates both forms") {
    const auto reports = check_bipartite(bell_state(), z, x, 1);
    CHECK(reports.memory_bound.lhs() == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(reports.memory_bound.bound == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(reports.holevo_bound.bound == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(reports.memory_bound.slack == doctest::Approx(0.0).epsilon(1e-10));
  }

  SUBCASE("pure product state") {
    const auto reports = check_bipartite(
        tensor(basis_state(0, {2}), basis_state(0, {2})), z, x, 1);
    CHECK(reports.memory_bound.lhs() == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(reports.memory_bound.bound == doctest::Approx(1.0).epsilon(1e-11));
  }

  SUBCASE("both slacks are non-negative on random states") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
      const DensityMatrix rho = random_density_matrix(rng, {2, 2});
      const auto reports = check_bipartite(rho, z, x, 1);
      CHECK(reports.memory_bound.slack >= -1e-9);
      CHECK(reports.holevo_bound.slack >= -1e-9);
      CHECK(reports.memory_bound.identity_residual <= 1e-10);
    }
  }
}

TEST_CASE("multi-memory uncertainty relation") {
  const auto x = MeasurementBasis::sigma_x();
  const auto y = MeasurementBasis::sigma_y();
  const auto z = MeasurementBasis::sigma_z();

  SUBCASE("decomposition identity on random tripartite states") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
      const DensityMatrix rho = random_density_matrix(rng, {2, 2, 2});
      const std::vector<MemoryAssignment> assignments{
          {random_basis(rng, 2), 2}, {random_basis(rng, 2), 1}};
      const auto report = check_multi(rho, assignments, 1.0);
      CHECK(report.identity_residual <= 1e-10);
    }
  }

  SUBCASE("diagonal GHZ-like state") {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(8, 8);
    diag(0, 0) = 0.5;
    diag(7, 7) = 0.5;
    const DensityMatrix ghz_mix(diag, {2, 2, 2});
    const auto report =
        check_multi(ghz_mix, {{z, 1}, {z, 2}}, 1.0);
    CHECK(report.slack >= -1e-10);
  }

  SUBCASE("evolved W state at the inertial point") {
    const DensityMatrix rho = evolve_protocol(inertial_config());
    const auto report = check_multi(rho, {{x, 2}, {y, 1}}, 1.0);
    CHECK(report.bound == doctest::Approx(kBoundInertial).epsilon(1e-10));
    CHECK(report.identity_residual <= 1e-10);
    CHECK(report.overlap_c == doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("rejects invalid assignments") {
    const DensityMatrix rho = DensityMatrix::maximally_mixed({2, 2, 2});
    CHECK_THROWS_AS(check_multi(rho, {{x, 1}, {y, 1}}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_multi(rho, {{x, 1}}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(check_multi(rho, {{x, 1}}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(check_multi(rho, {{x, 0}}, 1.0), std::invalid_argument);
  }
}

TEST_CASE("tripartite relation holds on random states") {
  std::mt19937_64 rng(41);
  const auto x = MeasurementBasis::sigma_x();
  const auto y = MeasurementBasis::sigma_y();
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2, 2});
    const double lhs = measured_conditional_entropy(rho, x, 0, 2) +
                       measured_conditional_entropy(rho, y, 0, 1);
    CHECK(lhs >= 1.0 - 1e-9);
  }
}
