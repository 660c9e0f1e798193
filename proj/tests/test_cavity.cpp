#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "cavur/cavity.hpp"
#include "cavur/errors.hpp"
#include "cavur/protocol.hpp"
#include "cavur/random_states.hpp"
#include "test_support.hpp"

using namespace cavur;
using namespace cavur::testing;

namespace {

struct TempFile {
  std::filesystem::path path;

  explicit TempFile(const std::string& contents) {
    path = std::filesystem::temp_directory_path() /
           ("cavur_test_" + std::to_string(std::rand()) + ".json");
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("acceleration factor") {
  CHECK(u_factor(0.1, 0.0) == 0.0);

  const double eta_full = 2.0 * std::log(2.1 / 1.9);
  CHECK(u_factor(0.1, eta_full) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(u_factor(0.1, eta_full / 2.0) == doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(u_factor(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(u_factor(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(u_factor(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("cavity spec construction") {
  const CavitySpec spec = CavitySpec::from_walls(0.95, 1.05, 0.5, 0.0);
  CHECK(spec.length == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(spec.accel == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spec.h == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(spec.u == 0.0);

  const CavitySpec from_u = CavitySpec::from_acceleration_factor(0.1, 0.5, 0.75);
  CHECK(from_u.u == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(u_factor(from_u.h, from_u.eta1) == doctest::Approx(0.75).epsilon(1e-13));

  CHECK_THROWS_AS(CavitySpec::from_walls(-1.0, 1.0, 0.5, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(CavitySpec::from_walls(1.0, 0.5, 0.5, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(CavitySpec::from_h(0.1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CavitySpec::from_h(2.5, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CavitySpec::from_acceleration_factor(0.1, 0.5, -0.2),
                  std::invalid_argument);
}

TEST_CASE("Rindler phases") {
  for (int n : {-3, 0, 1, 7}) {
    CHECK(std::abs(phase_G(n, 0.0, 0.25) - Complex(1.0)) == 0.0);
    CHECK(std::abs(phase_G(n, 1.0, 0.5) - Complex(-1.0)) <= 1e-12);
    CHECK(std::abs(std::abs(phase_G(n, 0.37, 0.21)) - 1.0) <= 1e-15);
  }
  CHECK(std::abs(phase_G(0, 0.5, 0.5) - Complex(0.0, 1.0)) <= 1e-15);
}

TEST_CASE("synthetic spectrum") {
  const auto spectrum = BogoliubovSpectrum::synthetic(2, 1, 0.01);
  REQUIRE(spectrum.magnitudes().size() == 2);
  CHECK(spectrum.magnitudes().at(1) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(spectrum.magnitudes().at(3) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(spectrum.l_max() == 1);

  const auto wide = BogoliubovSpectrum::synthetic(1, 2, 0.01);
  CHECK(wide.magnitudes().count(-1) == 1);
  CHECK(wide.magnitudes().at(-1) == doctest::Approx(0.01 / 16).epsilon(1e-13));
  CHECK(wide.magnitudes().at(3) == doctest::Approx(0.01 / 16).epsilon(1e-13));

  const auto empty = BogoliubovSpectrum::synthetic(1, 3, 0.0);
  CHECK(empty.magnitudes().empty());

  CHECK_THROWS_AS(BogoliubovSpectrum::synthetic(1, 0, 0.01),
                  std::invalid_argument);
  CHECK_THROWS_AS(BogoliubovSpectrum(1, {{2, -0.1}}), std::invalid_argument);
  // A label equal to the encoded mode is not a coupling line.
  CHECK_THROWS_AS(BogoliubovSpectrum(1, {{1, 0.01}}), std::invalid_argument);
  CHECK_THROWS_AS(BogoliubovSpectrum(0, {{1, 0.001}, {3, 0.1}}),
                  std::invalid_argument);  // farther line dominates
}

TEST_CASE("spectrum file loading") {
  SUBCASE("well-formed file") {
    TempFile file(R"({"mode_k": 1,
                      "magnitudes": {"0": 0.012, "2": 0.012, "-1": 0.004},
                      "comment": "three lines"})");
    const auto spectrum = load_spectrum(file.path);
    CHECK(spectrum.mode_k() == 1);
    REQUIRE(spectrum.magnitudes().size() == 3);
    CHECK(spectrum.magnitudes().at(-1) ==
          doctest::Approx(0.004).epsilon(1e-15));
  }

  SUBCASE("errors name the offending key") {
    TempFile no_mode(R"({"magnitudes": {"0": 0.01}})");
    CHECK_THROWS_WITH_AS(load_spectrum(no_mode.path),
                         doctest::Contains("mode_k"), IoError);

    TempFile negative(R"({"mode_k": 1, "magnitudes": {"0": -0.5}})");
    CHECK_THROWS_WITH_AS(load_spectrum(negative.path),
                         doctest::Contains("0"), IoError);

    TempFile bad_label(R"({"mode_k": 1, "magnitudes": {"two": 0.5}})");
    CHECK_THROWS_WITH_AS(load_spectrum(bad_label.path),
                         doctest::Contains("two"), IoError);

    CHECK_THROWS_AS(load_spectrum("/nonexistent/spectrum.json"), IoError);
  }

  SUBCASE("empty magnitudes load as the identity-channel spectrum") {
    TempFile empty(R"({"mode_k": 3, "magnitudes": {}})");
    const auto spectrum = load_spectrum(empty.path);
    CHECK(spectrum.magnitudes().empty());
    const CavitySpec spec = CavitySpec::from_acceleration_factor(0.1, 0.5, 0.7);
    const ModeChannel ch = mode_channel(spec, spectrum);
    CHECK(ch.f_plus == 0.0);
    CHECK(ch.f_minus == 0.0);
    CHECK(std::abs(ch.F_coh - ch.G_k) == 0.0);
  }
}

TEST_CASE("mode-mixing coefficients") {
  SUBCASE("vanish in the inertial limit and at full periods") {
    const auto spectrum = BogoliubovSpectrum::synthetic(1, 3, 0.01);
    const CavitySpec inert = CavitySpec::from_acceleration_factor(0.1, 0.5, 0.0);
    const auto [fp0, fm0] = f_coefficients(inert, spectrum);
    CHECK(fp0 == 0.0);
    CHECK(fm0 == 0.0);

    const CavitySpec period = CavitySpec::from_acceleration_factor(0.1, 0.5, 1.0);
    const auto [fp1, fm1] = f_coefficients(period, spectrum);
    CHECK(fp1 <= 1e-12);
    CHECK(fm1 <= 1e-12);
  }

  SUBCASE("single line above the mode") {
    const BogoliubovSpectrum line(2, {{3, 0.01}});
    const CavitySpec spec = CavitySpec::from_acceleration_factor(0.1, 0.5, 0.5);
    const auto [fp, fm] = f_coefficients(spec, line);
    CHECK(fp == doctest::Approx(4e-4).epsilon(1e-12));
    CHECK(fm == 0.0);
  }

  SUBCASE("negative labels feed f_minus") {
    const BogoliubovSpectrum line(0, {{-1, 0.01}});
    const CavitySpec spec = CavitySpec::from_acceleration_factor(0.1, 0.5, 0.5);
    const auto [fp, fm] = f_coefficients(spec, line);
    CHECK(fp == 0.0);
    CHECK(fm == doctest::Approx(4e-4).epsilon(1e-12));
  }

  SUBCASE("perturbative validity guards") {
    const CavitySpec spec = CavitySpec::from_acceleration_factor(1.9, 0.5, 0.5);
    CHECK_THROWS_AS(
        f_coefficients(spec, BogoliubovSpectrum(1, {{0, 0.5}, {2, 0.5}})),
        std::domain_error);
    const CavitySpec moderate =
        CavitySpec::from_acceleration_factor(1.0, 0.5, 0.5);
    CHECK_THROWS_AS(
        f_coefficients(moderate, BogoliubovSpectrum(1, {{0, 0.3}, {2, 0.3}})),
        std::domain_error);
  }

  SUBCASE("even period-1 functions of u") {
    const auto spectrum = BogoliubovSpectrum::synthetic(2, 4, 0.01);
    for (double u : {0.1, 0.3, 0.45}) {
      const auto a = f_coefficients(
          CavitySpec::from_acceleration_factor(0.1, 0.5, u), spectrum);
      const auto b = f_coefficients(
          CavitySpec::from_acceleration_factor(0.1, 0.5, 1.0 - u), spectrum);
      const auto c = f_coefficients(
          CavitySpec::from_acceleration_factor(0.1, 0.5, u + 1.0), spectrum);
      CHECK(std::abs(a.first - b.first) <= 1e-12);
      CHECK(std::abs(a.second - b.second) <= 1e-12);
      CHECK(std::abs(a.first - c.first) <= 1e-12);
      CHECK(std::abs(a.second - c.second) <= 1e-12);
    }
  }
}

TEST_CASE("second-order diagonal correction") {
  const auto spectrum = BogoliubovSpectrum::synthetic(2, 3, 0.01);
  CHECK(std::abs(second_order_diag(
            CavitySpec::from_acceleration_factor(0.1, 0.5, 0.0), spectrum)) ==
        0.0);
  CHECK(std::abs(second_order_diag(
            CavitySpec::from_acceleration_factor(0.1, 0.5, 1.0), spectrum)) <=
        1e-12);

  SUBCASE("single line reproduces the phase difference") {
    const BogoliubovSpectrum line(2, {{3, 0.01}});
    const CavitySpec spec = CavitySpec::from_acceleration_factor(0.1, 0.5, 0.5);
    const Complex expected =
        0.01 * (phase_G(3, spec.u, spec.s) - phase_G(2, spec.u, spec.s));
    CHECK(std::abs(second_order_diag(spec, line) - expected) <= 1e-15);
  }
}

TEST_CASE("mode channel") {
  const auto spectrum = BogoliubovSpectrum::synthetic(1, 5, 0.01);

  SUBCASE("identity at u = 0") {
    const ModeChannel ch = mode_channel(
        CavitySpec::from_acceleration_factor(0.1, 0.5, 0.0), spectrum);
    CHECK(ch.f_plus == 0.0);
    CHECK(ch.f_minus == 0.0);
    CHECK(std::abs(ch.F_coh - Complex(1.0)) == 0.0);
    CHECK(std::abs(ch.G_k - Complex(1.0)) == 0.0);
  }

  SUBCASE("pure phase conjugation at u = 1 with s = 1/2") {
    const ModeChannel ch = mode_channel(
        CavitySpec::from_acceleration_factor(0.1, 0.5, 1.0), spectrum);
    CHECK(ch.f_plus <= 1e-12);
    CHECK(ch.f_minus <= 1e-12);
    CHECK(std::abs(ch.F_coh - Complex(-1.0)) <= 1e-12);
  }

  SUBCASE("validity over a parameter sweep") {
    for (double h : {0.05, 0.1, 0.2}) {
      for (int step = 0; step <= 20; ++step) {
        const double u = 2.0 * step / 20.0;
        const CavitySpec spec = CavitySpec::from_acceleration_factor(h, 0.5, u);
        const ModeChannel ch = mode_channel(spec, spectrum);
        CHECK(choi_min_eigenvalue(ch) >= -1e-12);
        CHECK(std::abs(ch.F_coh) <= 1.0 + 1e-12);
        const double defect =
            std::abs((1.0 - std::norm(ch.F_coh)) - (ch.f_plus + ch.f_minus));
        const double h4 = h * h * h * h;
        CHECK(defect <=
              2.0 * std::norm(second_order_diag(spec, spectrum)) * h4 + 1e-15);
      }
    }
  }

  SUBCASE("periodicity of the s-independent content") {
    for (double u : {0.21, 0.68}) {
      const ModeChannel a = mode_channel(
          CavitySpec::from_acceleration_factor(0.1, 0.5, u), spectrum);
      const ModeChannel b = mode_channel(
          CavitySpec::from_acceleration_factor(0.1, 0.5, u + 1.0), spectrum);
      CHECK(std::abs(a.f_plus - b.f_plus) <= 1e-12);
      CHECK(std::abs(a.f_minus - b.f_minus) <= 1e-12);
      CHECK(std::abs(std::abs(a.F_coh) - std::abs(b.F_coh)) <= 1e-12);
      // The relative phase between the coherence and G_k is periodic;
      // G_k itself advances by exp(2 pi i s) per period.
      CHECK(std::abs(std::conj(a.G_k) * a.F_coh -
                     std::conj(b.G_k) * b.F_coh) <= 1e-12);
    }
  }

  SUBCASE("Choi matrix flags an unphysical coherence") {
    const ModeChannel bad{0.0, 0.0, Complex(1.2, 0.0), Complex(1.0, 0.0)};
    CHECK(choi_min_eigenvalue(bad) < -1e-12);
  }
}

TEST_CASE("applying the mode channel") {
  const ModeChannel identity{0.0, 0.0, Complex(1.0), Complex(1.0)};
  const ModeChannel flip{0.0, 0.0, Complex(-1.0), Complex(-1.0)};

  Eigen::VectorXcd plus(2);
  plus << 1.0, 1.0;
  const DensityMatrix plus_state = DensityMatrix::pure(plus, {2});
  CHECK(max_abs_diff(apply_mode_channel(plus_state, identity, 0).matrix(),
                     plus_state.matrix()) == 0.0);

  Eigen::VectorXcd minus(2);
  minus << 1.0, -1.0;
  const DensityMatrix minus_state = DensityMatrix::pure(minus, {2});
  CHECK(max_abs_diff(apply_mode_channel(plus_state, flip, 0).matrix(),
                     minus_state.matrix()) <= 1e-15);

  SUBCASE("trace preservation on random registers") {
    std::mt19937_64 rng(43);
    const auto spectrum = BogoliubovSpectrum::synthetic(1, 3, 0.01);
    const ModeChannel ch = mode_channel(
        CavitySpec::from_acceleration_factor(0.15, 0.5, 0.4), spectrum);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_density_matrix(rng, {2, 2, 2});
      const DensityMatrix mapped = apply_mode_channel(rho, ch, trial % 3);
      CHECK(std::abs(mapped.matrix().trace() - Complex(1.0)) <= 1e-12);
    }
  }

  SUBCASE("target validation") {
    const DensityMatrix rho = DensityMatrix::maximally_mixed({2, 2});
    CHECK_THROWS_AS(apply_mode_channel(rho, identity, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("fermionic consistency conditions") {
  SUBCASE("inertial W state passes with real coherences") {
    GameConfig cfg;
    const ConsistencyReport report =
        check_fermionic_consistency(evolve_protocol(cfg));
    CHECK(report.pass);
    CHECK(report.nu[0].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(report.nu[1].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(report.nu[2].real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(report.nu[3]) <= 1e-14);
    CHECK(std::abs(report.nu[4]) <= 1e-14);
    CHECK(std::abs(report.nu[5]) <= 1e-14);
    CHECK(report.mu[0] == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("accelerated states match the channel parametrization") {
    GameConfig cfg;
    cfg.u_b = 0.43;
    cfg.u_c = 0.79;
    const ModeChannel ch_b = bob_channel(cfg);
    const ModeChannel ch_c = charlie_channel(cfg);
    const ConsistencyReport report =
        check_fermionic_consistency(evolve_protocol(cfg));
    CHECK(report.pass);
    const Complex third(1.0 / 3.0, 0.0);
    CHECK(std::abs(report.nu[0] - third * ch_b.F_coh * std::conj(ch_c.F_coh)) <=
          1e-12);
    CHECK(std::abs(report.nu[1] -
                   third * (1.0 - ch_b.f_minus) * std::conj(ch_c.F_coh)) <=
          1e-12);
    CHECK(std::abs(report.nu[2] -
                   third * std::conj(ch_b.F_coh) * (1.0 - ch_c.f_minus)) <=
          1e-12);
    CHECK(std::abs(report.nu[3] -
                   third * std::conj(ch_b.F_coh) * ch_c.f_minus) <= 1e-12);
    CHECK(std::abs(report.nu[4] -
                   third * (-ch_b.f_minus) * std::conj(ch_c.F_coh)) <= 1e-12);
    CHECK(std::abs(report.nu[5]) <= 1e-14);
    // Sign products behind the pair rules.
    CHECK((report.nu[1] * std::conj(report.nu[4])).real() <= 1e-12);
    CHECK((report.nu[2] * std::conj(report.nu[3])).real() >= -1e-12);
  }

  SUBCASE("handcrafted violation fails") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
    m(0b001, 0b001) = m(0b100, 0b100) = m(0b011, 0b011) = m(0b110, 0b110) =
        0.25;
    m(0b001, 0b100) = m(0b100, 0b001) = 0.1;
    // Extraction flips the sign of this slot, so the extracted nu2 and
    // nu5 end up with the same sign, violating the opposite-sign rule.
    m(0b011, 0b110) = m(0b110, 0b011) = -0.1;
    const ConsistencyReport report =
        check_fermionic_consistency(DensityMatrix(m, {2, 2, 2}));
    CHECK(!report.pass);
    CHECK(!report.pair_checks[2]);
  }

  SUBCASE("requires three qubits") {
    CHECK_THROWS_AS(
        check_fermionic_consistency(DensityMatrix::maximally_mixed({2, 2})),
        std::invalid_argument);
  }
}
