#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "cavur/cavity.hpp"
#include "cavur/entropic.hpp"
#include "cavur/qstate.hpp"

namespace cavur {

struct SyntheticSpectrumParams {
  int l_max = 5;
  double strength = 0.01;
};

/// Parameters of one uncertainty-game evaluation: a W state shared by an
/// inertial agent (A) and two cavity memories (B, C) that accelerate
/// with factors u_b and u_c. Both cavities share h and s but carry
/// independent mode spectra.
struct GameConfig {
  double h = 0.1;
  int k_alice = 0;  ///< inertial mode index; accepted but has no effect
  int k_bob = 2;
  int k_charlie = 1;
  double s = 0.5;
  double u_b = 0.0;
  double u_c = 0.0;
  SyntheticSpectrumParams synthetic;
  std::optional<std::filesystem::path> spectrum_bob;
  std::optional<std::filesystem::path> spectrum_charlie;
  /// Default assignment: Charlie guesses sigma_x, Bob guesses sigma_y.
  /// Setting this swaps the two memories.
  bool swap_roles = false;

  void validate() const;
};

/// All quantities of one game evaluation. The lhs is
/// H(sigma_x|E_x) + H(sigma_y|E_y) and the bound is
/// lhs - H(sigma_x) - H(sigma_y) + log2(1/c). `lambda`, `fbar` and
/// `F_coh` are the closed-form parameters of the post-measurement state
/// of the sigma_x pair, used to cross-check the generic pipeline.
struct GameReport {
  double u_b = 0.0;
  double u_c = 0.0;
  double H_sx_C = 0.0;
  double H_sy_B = 0.0;
  double H_sx = 0.0;
  double H_sy = 0.0;
  double J_C_sx = 0.0;
  double J_B_sy = 0.0;
  double lhs = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  double identity_residual = 0.0;
  std::array<double, 4> lambda{};
  double fbar = 0.0;
  Complex F_coh{1.0, 0.0};
};

struct SweepGrid {
  int n_b = 101;
  int n_c = 101;
  double u_max = 1.0;
};

/// Empirical outcome statistics from repeated game rounds with a
/// uniformly random basis choice per round.
struct SimulationReport {
  std::int64_t rounds = 0;
  std::uint64_t seed = 0;
  std::int64_t count_x_plus = 0;
  std::int64_t count_x_minus = 0;
  std::int64_t count_y_plus = 0;
  std::int64_t count_y_minus = 0;
  double empirical_p_x_plus = 0.0;
  double empirical_p_y_plus = 0.0;
  double empirical_H_sx_C = 0.0;
  double empirical_H_sy_B = 0.0;
  double analytic_H_sx_C = 0.0;
  double analytic_H_sy_B = 0.0;
};

/// (|100> + |010> + |001>)/sqrt(3) as a density matrix.
DensityMatrix w_state();

/// Mode channels of the two memories for this configuration.
ModeChannel bob_channel(const GameConfig& cfg);
ModeChannel charlie_channel(const GameConfig& cfg);

/// W state after sending B and C through their mode channels.
DensityMatrix evolve_protocol(const GameConfig& cfg);

/// Closed-form post-measurement state of (A, C) after a sigma_x
/// measurement on A, in the basis {00, 01, 10, 11}:
///   (1/6) [ 2-fbar  0       0      F    ]
///         [ 0       1+fbar  F*     0    ]
///         [ 0       F       2-fbar 0    ]
///         [ F*      0       0      1+fbar ]
/// with fbar = -f_plus + 2 f_minus and F the channel coherence.
DensityMatrix closed_form_sigma_x_C(const ModeChannel& ch);

/// Eigenvalues of the closed-form state, ascending:
/// (3 -+ sqrt(1 - 4 fbar + 4 fbar^2 + 4 |F|^2)) / 12, each twice.
std::array<double, 4> closed_form_eigenvalues(double fbar, Complex F_coh);

/// Evaluates one grid point through the generic pipeline and
/// cross-checks the closed form.
GameReport game_report(const GameConfig& cfg);

/// Row-major table of reports on the inclusive uniform grid
/// u_b, u_c in [0, u_max]. Deterministic ordering.
std::vector<GameReport> sweep(const GameConfig& cfg, const SweepGrid& grid);

/// Monte Carlo rounds of the game with a fixed seed; reproducible.
SimulationReport simulate_rounds(const GameConfig& cfg, std::int64_t rounds,
                                 std::uint64_t seed);

}  // namespace cavur
