#pragma once

#include <array>
#include <complex>
#include <filesystem>
#include <map>
#include <utility>

#include "cavur/qstate.hpp"

namespace cavur {

/// Geometry and motion of one rigid cavity on a basic-building-block
/// trajectory: inertial, then uniformly accelerated for Rindler time
/// eta1, then inertial again.
struct CavitySpec {
  double x1 = 0.0;    ///< left wall position at t = 0
  double x2 = 0.0;    ///< right wall position
  double length = 0.0;  ///< proper length L = x2 - x1
  double accel = 0.0;   ///< proper acceleration at cavity center, 2/(x1+x2)
  double h = 0.0;       ///< dimensionless perturbative parameter a*L
  double s = 0.5;       ///< wall reflection phase parameter in [0, 1)
  double eta1 = 0.0;    ///< Rindler-time duration of the accelerated segment
  double u = 0.0;       ///< acceleration factor eta1 / (2 ln[(h+2)/(2-h)])

  static CavitySpec from_walls(double x1, double x2, double s, double eta1);
  static CavitySpec from_h(double h, double s, double eta1);
  /// Inverts the u(eta1) relation; the natural entry point when the
  /// acceleration factor itself is the control knob.
  static CavitySpec from_acceleration_factor(double h, double s, double u);
};

/// u = eta1 / (2 ln[(h+2)/(2-h)]). Requires 0 < h < 2 when eta1 > 0;
/// eta1 = 0 gives u = 0 for any h.
double u_factor(double h, double eta1);

/// Phase acquired by Rindler mode n over the accelerated segment,
/// exp(2 pi i u (n + s)). Unit modulus.
Complex phase_G(int n, double u, double s);

/// Truncated set of first-order Bogoliubov magnitudes |F1_{lk}|^2 for
/// one encoded mode k. Values are per unit h^2; the label l runs over
/// positive and negative mode indices with l != k.
class BogoliubovSpectrum {
 public:
  BogoliubovSpectrum(int mode_k, std::map<int, double> magnitudes);

  /// Test provider: |F1_{lk}|^2 = strength / (l-k)^4 for 0 < |l-k| <= l_max.
  static BogoliubovSpectrum synthetic(int mode_k, int l_max, double strength);

  int mode_k() const { return mode_k_; }
  int l_max() const { return l_max_; }
  const std::map<int, double>& magnitudes() const { return magnitudes_; }
  double total_magnitude() const;

 private:
  int mode_k_ = 0;
  std::map<int, double> magnitudes_;
  int l_max_ = 0;
};

/// Reads a spectrum from a JSON file:
///   { "mode_k": 1, "magnitudes": { "-1": 0.004, "0": 0.012, "2": 0.012 },
///     "comment": "optional" }
/// Magnitude keys are signed integer mode labels. Parse errors name the
/// offending key. An empty magnitudes map loads (with a warning) and
/// yields the identity channel at any u.
BogoliubovSpectrum load_spectrum(const std::filesystem::path& path);

/// Effective qubit channel on one cavity mode's {vacuum, one-particle}
/// span after the trajectory:
///   |0><0| -> (1-f_minus)|0><0| + f_minus|1><1|
///   |1><1| -> f_plus|0><0| + (1-f_plus)|1><1|
///   |0><1| -> F_coh |0><1|      (and Hermitian conjugate)
struct ModeChannel {
  double f_plus = 0.0;
  double f_minus = 0.0;
  Complex F_coh{1.0, 0.0};
  Complex G_k{1.0, 0.0};
};

/// (f_plus, f_minus): mode-mixing probabilities
/// f+- = sum_l 4 sin^2(pi u (k-l)) |F1_{lk}|^2 h^2 over l >= 0 (l != k)
/// and l < 0 respectively.
std::pair<double, double> f_coefficients(const CavitySpec& spec,
                                         const BogoliubovSpectrum& spectrum);

/// Second-order diagonal Bogoliubov correction
/// FF2_{kk} = sum_l |F1_{lk}|^2 (G_l - G_k), with Re F2_{kk} fixed by
/// first-order unitarity.
Complex second_order_diag(const CavitySpec& spec,
                          const BogoliubovSpectrum& spectrum);

/// Assembles the mode channel. The raw coherence G_k + FF2_{kk} h^2
/// overshoots complete positivity by O(h^4); its magnitude is capped at
/// sqrt((1-f+)(1-f-)), the largest value for which the Choi matrix is
/// positive. The cap is inactive at integer u.
ModeChannel mode_channel(const CavitySpec& spec,
                         const BogoliubovSpectrum& spectrum);

/// Choi matrix of the channel in the (input (x) output) basis
/// {00, 01, 10, 11}; positive semidefinite iff the channel is
/// completely positive.
Eigen::Matrix4cd choi_matrix(const ModeChannel& ch);
double choi_min_eigenvalue(const ModeChannel& ch);

/// Applies the channel to one qubit factor of a composite register.
DensityMatrix apply_mode_channel(const DensityMatrix& rho,
                                 const ModeChannel& ch, int target);

/// Coefficients of a three-mode fermionic state in the number basis and
/// the sign conditions required for a consistent fermion-qubit mapping:
/// {nu1, nu6} and {nu3, nu4} same sign, {nu2, nu5} opposite sign
/// (signs of Re(nu_a nu_b*); zero is compatible with either).
struct ConsistencyReport {
  std::array<double, 8> mu{};
  std::array<Complex, 6> nu{};
  std::array<bool, 3> pair_checks{};  ///< {nu1,nu6}, {nu3,nu4}, {nu2,nu5}
  bool pass = false;
};

/// Extracts the number-basis coefficients of a 3-qubit state and checks
/// the fermionic consistency conditions. The register simulation drops
/// Jordan-Wigner strings; the nu5 coherence (double excitation against
/// the first two modes occupied) is the one slot where the dropped
/// string sign matters, so its fermionic sign is restored here.
ConsistencyReport check_fermionic_consistency(const DensityMatrix& rho_abc);

}  // namespace cavur
