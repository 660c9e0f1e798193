#include "cavur/cavity.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cavur/errors.hpp"
#include "cavur/log.hpp"

namespace cavur {

namespace {

constexpr double kPi = std::numbers::pi;

void check_s(double s) {
  if (s < 0.0 || s >= 1.0) {
    throw std::invalid_argument("reflection phase s must lie in [0, 1)");
  }
}

}  // namespace

double u_factor(double h, double eta1) {
  if (eta1 < 0.0) {
    throw std::invalid_argument("eta1 must be non-negative");
  }
  if (eta1 == 0.0) return 0.0;
  if (h >= 2.0) {
    throw std::domain_error("h must be below 2 (wall positions collapse)");
  }
  if (h <= 0.0) {
    throw std::domain_error(
        "inertial cavity (h = 0) accumulates no Rindler phase; u is undefined");
  }
  return eta1 / (2.0 * std::log((h + 2.0) / (2.0 - h)));
}

CavitySpec CavitySpec::from_walls(double x1, double x2, double s,
                                  double eta1) {
  if (!(0.0 < x1 && x1 < x2)) {
    throw std::invalid_argument("cavity walls require 0 < x1 < x2");
  }
  check_s(s);
  CavitySpec spec;
  spec.x1 = x1;
  spec.x2 = x2;
  spec.length = x2 - x1;
  spec.accel = 2.0 / (x1 + x2);
  spec.h = spec.accel * spec.length;
  spec.s = s;
  spec.eta1 = eta1;
  spec.u = u_factor(spec.h, eta1);
  return spec;
}

CavitySpec CavitySpec::from_h(double h, double s, double eta1) {
  if (!(0.0 < h && h < 2.0)) {
    throw std::invalid_argument("h must lie in (0, 2)");
  }
  // Walls at unit central acceleration: x1 + x2 = 2, x2 - x1 = h.
  return from_walls(1.0 - h / 2.0, 1.0 + h / 2.0, s, eta1);
}

CavitySpec CavitySpec::from_acceleration_factor(double h, double s, double u) {
  if (u < 0.0) {
    throw std::invalid_argument("acceleration factor u must be non-negative");
  }
  if (!(0.0 < h && h < 2.0)) {
    throw std::invalid_argument("h must lie in (0, 2)");
  }
  const double eta1 = u * 2.0 * std::log((h + 2.0) / (2.0 - h));
  return from_h(h, s, eta1);
}

Complex phase_G(int n, double u, double s) {
  return std::polar(1.0, 2.0 * kPi * u * (n + s));
}

BogoliubovSpectrum::BogoliubovSpectrum(int mode_k,
                                       std::map<int, double> magnitudes)
    : mode_k_(mode_k), magnitudes_(std::move(magnitudes)) {
  if (magnitudes_.empty()) {
    log::warn("empty Bogoliubov spectrum: channel reduces to the identity");
    return;
  }
  int d_min = std::numeric_limits<int>::max();
  double global_max = 0.0;
  for (const auto& [l, m] : magnitudes_) {
    if (l == mode_k_) {
      throw std::invalid_argument(
          "spectrum label " + std::to_string(l) + " equals mode_k");
    }
    if (m < 0.0) {
      throw std::invalid_argument("negative magnitude at label " +
                                  std::to_string(l));
    }
    const int d = std::abs(l - mode_k_);
    l_max_ = std::max(l_max_, d);
    d_min = std::min(d_min, d);
    global_max = std::max(global_max, m);
  }
  // Provider sanity: the strongest line must sit at the smallest
  // label distance.
  double nearest_max = 0.0;
  for (const auto& [l, m] : magnitudes_) {
    if (std::abs(l - mode_k_) == d_min) nearest_max = std::max(nearest_max, m);
  }
  if (global_max > nearest_max) {
    throw std::invalid_argument(
        "spectrum magnitudes do not decay with label distance");
  }
}

BogoliubovSpectrum BogoliubovSpectrum::synthetic(int mode_k, int l_max,
                                                 double strength) {
  if (l_max < 1) throw std::invalid_argument("synthetic spectrum needs l_max >= 1");
  if (strength < 0.0) throw std::invalid_argument("strength must be >= 0");
  std::map<int, double> lines;
  if (strength > 0.0) {
    for (int l = mode_k - l_max; l <= mode_k + l_max; ++l) {
      if (l == mode_k) continue;
      const double d = l - mode_k;
      lines[l] = strength / (d * d * d * d);
    }
  }
  return BogoliubovSpectrum(mode_k, std::move(lines));
}

double BogoliubovSpectrum::total_magnitude() const {
  double sum = 0.0;
  for (const auto& [l, m] : magnitudes_) sum += m;
  return sum;
}

BogoliubovSpectrum load_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open spectrum file: " + path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("spectrum file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw IoError("spectrum file " + path.string() + ": expected a JSON object");
  }
  if (!doc.contains("mode_k")) {
    throw IoError("spectrum file " + path.string() + ": missing key 'mode_k'");
  }
  if (!doc["mode_k"].is_number_integer()) {
    throw IoError("spectrum file " + path.string() +
                  ": key 'mode_k' must be an integer");
  }
  const int mode_k = doc["mode_k"].get<int>();
  if (!doc.contains("magnitudes") || !doc["magnitudes"].is_object()) {
    throw IoError("spectrum file " + path.string() +
                  ": missing object key 'magnitudes'");
  }
  std::map<int, double> lines;
  for (const auto& [key, value] : doc["magnitudes"].items()) {
    int label = 0;
    try {
      std::size_t used = 0;
      label = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw IoError("spectrum file " + path.string() +
                    ": magnitude label '" + key + "' is not an integer");
    }
    if (!value.is_number()) {
      throw IoError("spectrum file " + path.string() + ": magnitude '" + key +
                    "' must be a number");
    }
    lines[label] = value.get<double>();
  }
  try {
    return BogoliubovSpectrum(mode_k, std::move(lines));
  } catch (const std::invalid_argument& e) {
    throw IoError("spectrum file " + path.string() + ": " + e.what());
  }
}

std::pair<double, double> f_coefficients(const CavitySpec& spec,
                                         const BogoliubovSpectrum& spectrum) {
  const double h2 = spec.h * spec.h;
  if (spectrum.total_magnitude() * h2 >= 1.0) {
    throw std::domain_error(
        "perturbative validity violated: sum |F1|^2 h^2 >= 1");
  }
  const int k = spectrum.mode_k();
  double f_plus = 0.0, f_minus = 0.0;
  for (const auto& [l, m] : spectrum.magnitudes()) {
    const double sin_term = std::sin(kPi * spec.u * (k - l));
    const double weight = 4.0 * sin_term * sin_term * m * h2;
    if (l >= 0) {
      f_plus += weight;
    } else {
      f_minus += weight;
    }
  }
  if (f_plus + f_minus >= 0.5) {
    throw std::domain_error(
        "mode-mixing probabilities too large (h too large for this spectrum)");
  }
  return {f_plus, f_minus};
}

Complex second_order_diag(const CavitySpec& spec,
                          const BogoliubovSpectrum& spectrum) {
  const int k = spectrum.mode_k();
  const Complex G_k = phase_G(k, spec.u, spec.s);
  Complex sum = 0.0;
  for (const auto& [l, m] : spectrum.magnitudes()) {
    sum += m * (phase_G(l, spec.u, spec.s) - G_k);
  }
  return sum;
}

ModeChannel mode_channel(const CavitySpec& spec,
                         const BogoliubovSpectrum& spectrum) {
  const auto [f_plus, f_minus] = f_coefficients(spec, spectrum);
  const Complex G_k = phase_G(spectrum.mode_k(), spec.u, spec.s);
  Complex F = G_k + second_order_diag(spec, spectrum) * spec.h * spec.h;
  // Largest coherence magnitude compatible with complete positivity.
  const double cap = std::sqrt((1.0 - f_plus) * (1.0 - f_minus));
  const double mag = std::abs(F);
  if (mag > cap) F *= cap / mag;
  ModeChannel ch{f_plus, f_minus, F, G_k};
  const double min_eig = choi_min_eigenvalue(ch);
  if (min_eig < -1e-12) {
    std::ostringstream msg;
    msg << "mode channel is not completely positive (Choi eigenvalue "
        << min_eig << ")";
    throw InvariantViolation(msg.str());
  }
  return ch;
}

Eigen::Matrix4cd choi_matrix(const ModeChannel& ch) {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c(0, 0) = 1.0 - ch.f_minus;
  c(1, 1) = ch.f_minus;
  c(2, 2) = ch.f_plus;
  c(3, 3) = 1.0 - ch.f_plus;
  c(0, 3) = ch.F_coh;
  c(3, 0) = std::conj(ch.F_coh);
  return c;
}

double choi_min_eigenvalue(const ModeChannel& ch) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(
      choi_matrix(ch), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix apply_mode_channel(const DensityMatrix& rho,
                                 const ModeChannel& ch, int target) {
  const auto& dims = rho.subsystem_dims();
  if (target < 0 || target >= rho.num_subsystems()) {
    throw std::invalid_argument("apply_mode_channel: target out of range");
  }
  if (dims[target] != 2) {
    throw std::invalid_argument("apply_mode_channel: target must be a qubit");
  }
  int post = 1;
  for (int i = target + 1; i < rho.num_subsystems(); ++i) post *= dims[i];

  const int dim = rho.dim();
  const auto& m = rho.matrix();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int bi = (i / post) % 2;
    for (int j = 0; j < dim; ++j) {
      const int bj = (j / post) % 2;
      const Complex v = m(i, j);
      if (bi == 0 && bj == 0) {
        out(i, j) += (1.0 - ch.f_minus) * v;
        out(i + post, j + post) += ch.f_minus * v;
      } else if (bi == 1 && bj == 1) {
        out(i, j) += (1.0 - ch.f_plus) * v;
        out(i - post, j - post) += ch.f_plus * v;
      } else if (bi == 0) {
        out(i, j) += ch.F_coh * v;
      } else {
        out(i, j) += std::conj(ch.F_coh) * v;
      }
    }
  }
  return DensityMatrix(std::move(out), dims);
}

ConsistencyReport check_fermionic_consistency(const DensityMatrix& rho_abc) {
  const auto& dims = rho_abc.subsystem_dims();
  if (dims != std::vector<int>{2, 2, 2}) {
    throw std::invalid_argument(
        "check_fermionic_consistency: state must be three qubits");
  }
  const auto& m = rho_abc.matrix();

  ConsistencyReport report;
  // Populations in the number basis |n1 n2 n3>, mu1 = vacuum, ...,
  // mu8 = triple excitation, ordered as in the three-mode expansion.
  const std::array<int, 8> mu_index = {0b000, 0b001, 0b010, 0b011,
                                       0b100, 0b101, 0b110, 0b111};
  double mu_sum = 0.0;
  for (int i = 0; i < 8; ++i) {
    report.mu[i] = m(mu_index[i], mu_index[i]).real();
    mu_sum += report.mu[i];
    if (report.mu[i] < -1e-12) {
      throw InvariantViolation("negative population in number basis");
    }
  }
  if (std::abs(mu_sum - 1.0) > 1e-10) {
    throw InvariantViolation("number-basis populations do not sum to 1");
  }

  report.nu[0] = m(0b001, 0b010);
  report.nu[1] = m(0b001, 0b100);
  report.nu[2] = m(0b010, 0b100);
  report.nu[3] = m(0b011, 0b101);
  // nu5 couples |011> to |110>: creating the second-mode excitation
  // crosses the occupied first mode, so the dropped Jordan-Wigner
  // string contributes a minus sign in the fermionic coefficients.
  report.nu[4] = -m(0b011, 0b110);
  report.nu[5] = m(0b101, 0b110);

  const auto same_sign = [](Complex a, Complex b) {
    return (a * std::conj(b)).real() >= -1e-12;
  };
  const auto opposite_sign = [](Complex a, Complex b) {
    return (a * std::conj(b)).real() <= 1e-12;
  };
  report.pair_checks[0] = same_sign(report.nu[0], report.nu[5]);
  report.pair_checks[1] = same_sign(report.nu[2], report.nu[3]);
  report.pair_checks[2] = opposite_sign(report.nu[1], report.nu[4]);
  report.pass = report.pair_checks[0] && report.pair_checks[1] &&
                report.pair_checks[2];
  return report;
}

}  // namespace cavur
