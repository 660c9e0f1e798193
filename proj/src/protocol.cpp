#include "cavur/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "cavur/errors.hpp"

namespace cavur {

namespace {

// Uniform double in [0, 1) from the top 53 bits of the generator;
// keeps the stream independent of library distribution internals.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ModeChannel make_channel(const GameConfig& cfg, int mode_k, double u,
                         const std::optional<std::filesystem::path>& file) {
  const CavitySpec spec = CavitySpec::from_acceleration_factor(cfg.h, cfg.s, u);
  if (file) {
    BogoliubovSpectrum spectrum = load_spectrum(*file);
    if (spectrum.mode_k() != mode_k) {
      std::ostringstream msg;
      msg << "spectrum file " << file->string() << " encodes mode "
          << spectrum.mode_k() << " but the configuration expects mode "
          << mode_k;
      throw std::invalid_argument(msg.str());
    }
    return mode_channel(spec, spectrum);
  }
  return mode_channel(spec, BogoliubovSpectrum::synthetic(
                                mode_k, cfg.synthetic.l_max,
                                cfg.synthetic.strength));
}

double shannon(const ProbabilityDistribution& p) { return p.entropy(); }

}  // namespace

void GameConfig::validate() const {
  if (!(0.0 < h && h < 2.0)) {
    throw std::invalid_argument("h must lie in (0, 2)");
  }
  if (s < 0.0 || s >= 1.0) {
    throw std::invalid_argument("s must lie in [0, 1)");
  }
  if (u_b < 0.0 || u_c < 0.0) {
    throw std::invalid_argument("acceleration factors must be non-negative");
  }
  if (k_bob < 0 || k_charlie < 0) {
    throw std::invalid_argument("mode indices must be non-negative");
  }
  if (synthetic.l_max < 1) {
    throw std::invalid_argument("spectrum truncation l_max must be >= 1");
  }
  if (synthetic.strength < 0.0) {
    throw std::invalid_argument("spectrum strength must be >= 0");
  }
}

DensityMatrix w_state() {
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(8);
  const double amp = 1.0 / std::sqrt(3.0);
  ket(0b100) = amp;
  ket(0b010) = amp;
  ket(0b001) = amp;
  return DensityMatrix::pure(ket, {2, 2, 2});
}

ModeChannel bob_channel(const GameConfig& cfg) {
  cfg.validate();
  return make_channel(cfg, cfg.k_bob, cfg.u_b, cfg.spectrum_bob);
}

ModeChannel charlie_channel(const GameConfig& cfg) {
  cfg.validate();
  return make_channel(cfg, cfg.k_charlie, cfg.u_c, cfg.spectrum_charlie);
}

DensityMatrix evolve_protocol(const GameConfig& cfg) {
  cfg.validate();
  DensityMatrix rho = apply_mode_channel(w_state(), bob_channel(cfg), 1);
  return apply_mode_channel(rho, charlie_channel(cfg), 2);
}

DensityMatrix closed_form_sigma_x_C(const ModeChannel& ch) {
  const double fbar = -ch.f_plus + 2.0 * ch.f_minus;
  const Complex f = ch.F_coh;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 2.0 - fbar;
  m(1, 1) = 1.0 + fbar;
  m(2, 2) = 2.0 - fbar;
  m(3, 3) = 1.0 + fbar;
  m(0, 3) = f;
  m(1, 2) = std::conj(f);
  m(2, 1) = f;
  m(3, 0) = std::conj(f);
  m /= 6.0;
  return DensityMatrix(std::move(m), {2, 2});
}

std::array<double, 4> closed_form_eigenvalues(double fbar, Complex F_coh) {
  const double radicand =
      1.0 - 4.0 * fbar + 4.0 * fbar * fbar + 4.0 * std::norm(F_coh);
  if (radicand < -1e-12) {
    throw std::domain_error("closed-form radicand is negative");
  }
  const double root = std::sqrt(std::max(radicand, 0.0));
  const double low = (3.0 - root) / 12.0;
  const double high = (3.0 + root) / 12.0;
  return {low, low, high, high};
}

GameReport game_report(const GameConfig& cfg) {
  cfg.validate();
  const ModeChannel ch_b = bob_channel(cfg);
  const ModeChannel ch_c = charlie_channel(cfg);
  DensityMatrix rho = apply_mode_channel(w_state(), ch_b, 1);
  rho = apply_mode_channel(rho, ch_c, 2);

  const MeasurementBasis basis_x = MeasurementBasis::sigma_x();
  const MeasurementBasis basis_y = MeasurementBasis::sigma_y();
  const int memory_x = cfg.swap_roles ? 1 : 2;
  const int memory_y = cfg.swap_roles ? 2 : 1;
  const ModeChannel& ch_x = cfg.swap_roles ? ch_b : ch_c;

  GameReport report;
  report.u_b = cfg.u_b;
  report.u_c = cfg.u_c;
  report.H_sx_C = measured_conditional_entropy(rho, basis_x, 0, memory_x);
  report.H_sy_B = measured_conditional_entropy(rho, basis_y, 0, memory_y);
  report.H_sx = shannon(outcome_probs(rho, basis_x, 0));
  report.H_sy = shannon(outcome_probs(rho, basis_y, 0));
  report.J_C_sx = holevo_quantity(rho, basis_x, 0, memory_x).value;
  report.J_B_sy = holevo_quantity(rho, basis_y, 0, memory_y).value;

  const double c = max_overlap(basis_x, basis_y);
  report.lhs = report.H_sx_C + report.H_sy_B;
  report.bound = report.lhs - report.H_sx - report.H_sy + std::log2(1.0 / c);
  report.slack = report.lhs - report.bound;
  report.identity_residual = std::abs(
      report.lhs - (report.H_sx + report.H_sy - report.J_C_sx - report.J_B_sy));

  report.fbar = -ch_x.f_plus + 2.0 * ch_x.f_minus;
  report.F_coh = ch_x.F_coh;
  report.lambda = closed_form_eigenvalues(report.fbar, report.F_coh);
  const double h_closed =
      2.0 * entropy_term(report.lambda[0]) + 2.0 * entropy_term(report.lambda[2]) -
      entropy_term((2.0 - report.fbar) / 3.0) -
      entropy_term((1.0 + report.fbar) / 3.0);

  // Corruption guards: the closed form and the entropy decomposition
  // identity hold exactly for this state family.
  if (std::abs(h_closed - report.H_sx_C) > 1e-9) {
    std::ostringstream msg;
    msg << "pipeline H(sx|E) " << report.H_sx_C
        << " disagrees with the closed form " << h_closed;
    throw InvariantViolation(msg.str());
  }
  if (report.identity_residual > 1e-10) {
    std::ostringstream msg;
    msg << "entropy decomposition identity residual "
        << report.identity_residual;
    throw InvariantViolation(msg.str());
  }
  return report;
}

std::vector<GameReport> sweep(const GameConfig& cfg, const SweepGrid& grid) {
  cfg.validate();
  if (grid.n_b < 2 || grid.n_c < 2) {
    throw std::invalid_argument("sweep grid needs at least 2 points per axis");
  }
  if (grid.u_max <= 0.0) {
    throw std::invalid_argument("u_max must be positive");
  }
  std::vector<GameReport> reports;
  reports.reserve(static_cast<std::size_t>(grid.n_b) * grid.n_c);
  GameConfig point = cfg;
  for (int i = 0; i < grid.n_b; ++i) {
    point.u_b = grid.u_max * i / (grid.n_b - 1);
    for (int j = 0; j < grid.n_c; ++j) {
      point.u_c = grid.u_max * j / (grid.n_c - 1);
      reports.push_back(game_report(point));
    }
  }
  return reports;
}

SimulationReport simulate_rounds(const GameConfig& cfg, std::int64_t rounds,
                                 std::uint64_t seed) {
  cfg.validate();
  if (rounds < 1) {
    throw std::invalid_argument("simulate_rounds: rounds must be >= 1");
  }
  const DensityMatrix rho = evolve_protocol(cfg);
  const MeasurementBasis basis_x = MeasurementBasis::sigma_x();
  const MeasurementBasis basis_y = MeasurementBasis::sigma_y();
  const int memory_x = cfg.swap_roles ? 1 : 2;
  const int memory_y = cfg.swap_roles ? 2 : 1;

  const HolevoReport hx = holevo_quantity(rho, basis_x, 0, memory_x);
  const HolevoReport hy = holevo_quantity(rho, basis_y, 0, memory_y);

  SimulationReport report;
  report.rounds = rounds;
  report.seed = seed;

  std::mt19937_64 rng(seed);
  for (std::int64_t r = 0; r < rounds; ++r) {
    const bool use_x = uniform01(rng) < 0.5;
    const double p_plus =
        use_x ? hx.outcome_probs.at(0) : hy.outcome_probs.at(0);
    const bool plus = uniform01(rng) < p_plus;
    if (use_x) {
      (plus ? report.count_x_plus : report.count_x_minus)++;
    } else {
      (plus ? report.count_y_plus : report.count_y_minus)++;
    }
  }

  // Plug-in conditional entropy from empirical outcome frequencies and
  // the per-outcome memory states:
  // H(M|E) = H(p) + sum_j p_j H(rho_j) - H(sum_j p_j rho_j).
  const auto plugin = [](double p_plus, const HolevoReport& h) {
    const std::array<double, 2> p{p_plus, 1.0 - p_plus};
    double value = entropy_term(p[0]) + entropy_term(p[1]);
    Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(2, 2);
    for (std::size_t j = 0; j < h.conditional_memory_states.size(); ++j) {
      const auto& state = h.conditional_memory_states[j];
      if (!state || p[j] <= 0.0) continue;
      value += p[j] * von_neumann_entropy(*state);
      mix += p[j] * state->matrix();
    }
    for (double lambda : eigenvalues_hermitian(mix)) {
      value -= entropy_term(std::clamp(lambda, 0.0, 1.0));
    }
    return value;
  };

  const std::int64_t n_x = report.count_x_plus + report.count_x_minus;
  const std::int64_t n_y = report.count_y_plus + report.count_y_minus;
  report.empirical_p_x_plus =
      n_x > 0 ? static_cast<double>(report.count_x_plus) / n_x
              : std::numeric_limits<double>::quiet_NaN();
  report.empirical_p_y_plus =
      n_y > 0 ? static_cast<double>(report.count_y_plus) / n_y
              : std::numeric_limits<double>::quiet_NaN();
  report.empirical_H_sx_C =
      n_x > 0 ? plugin(report.empirical_p_x_plus, hx)
              : std::numeric_limits<double>::quiet_NaN();
  report.empirical_H_sy_B =
      n_y > 0 ? plugin(report.empirical_p_y_plus, hy)
              : std::numeric_limits<double>::quiet_NaN();
  report.analytic_H_sx_C =
      measured_conditional_entropy(rho, basis_x, 0, memory_x);
  report.analytic_H_sy_B =
      measured_conditional_entropy(rho, basis_y, 0, memory_y);
  return report;
}

}  // namespace cavur
