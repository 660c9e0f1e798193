#include "cavur/selftest.hpp"

#include <cmath>
#include <sstream>

#include "cavur/random_states.hpp"

namespace cavur {

namespace {

struct Collector {
  std::vector<CheckResult> results;

  void add(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  }
};

std::string num(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// sum_i H(M_i|E_i) = sum_i H(M_i) - sum_i J(E_i|M_i) on random
// tripartite states with random bases.
void check_identity(Collector& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2, 2});
    const std::vector<MemoryAssignment> assignments{
        {random_basis(rng, 2), 2}, {random_basis(rng, 2), 1}};
    const UncertaintyReport report = check_multi(rho, assignments, 1.0);
    worst = std::max(worst, report.identity_residual);
  }
  out.add("entropy decomposition identity (100 random states)", worst <= 1e-10,
          "max residual " + num(worst));
}

// H(M1|B) + H(M2|C) >= log2(1/c) for sigma_x / sigma_y.
void check_tripartite_relation(Collector& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  double worst = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2, 2});
    const double lhs =
        measured_conditional_entropy(rho, MeasurementBasis::sigma_x(), 0, 2) +
        measured_conditional_entropy(rho, MeasurementBasis::sigma_y(), 0, 1);
    worst = std::min(worst, lhs - 1.0);
  }
  out.add("tripartite relation (100 random states)", worst >= -1e-9,
          "min lhs - log2(1/c) = " + num(worst));
}

// Bipartite relation in the conditional-entropy form on random states.
void check_bipartite_relation(Collector& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  double worst = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2});
    const BipartiteReports reports = check_bipartite(
        rho, MeasurementBasis::sigma_z(), MeasurementBasis::sigma_x(), 1);
    worst = std::min(worst, reports.memory_bound.slack);
    worst = std::min(worst, reports.holevo_bound.slack);
  }
  out.add("bipartite relation (100 random states)", worst >= -1e-9,
          "min slack " + num(worst));
}

void check_channel_validity(Collector& out, const GameConfig& cfg) {
  double worst_choi = 0.0;
  double worst_defect = 0.0;
  bool coherence_ok = true;
  bool periodic_ok = true;
  for (double h : {0.05, 0.1, 0.15, 0.2}) {
    for (int k : {cfg.k_charlie, cfg.k_bob}) {
      const BogoliubovSpectrum spectrum = BogoliubovSpectrum::synthetic(
          k, cfg.synthetic.l_max, cfg.synthetic.strength);
      for (int step = 0; step <= 80; ++step) {
        const double u = 2.0 * step / 80.0;
        const CavitySpec spec =
            CavitySpec::from_acceleration_factor(h, cfg.s, u);
        const ModeChannel ch = mode_channel(spec, spectrum);
        worst_choi = std::min(worst_choi, choi_min_eigenvalue(ch));
        const Complex f2 = second_order_diag(spec, spectrum);
        const double defect =
            std::abs((1.0 - std::norm(ch.F_coh)) - (ch.f_plus + ch.f_minus));
        const double allowance =
            2.0 * std::norm(f2) * h * h * h * h + 1e-15;
        worst_defect = std::max(worst_defect, defect - allowance);
        coherence_ok = coherence_ok && std::abs(ch.F_coh) <= 1.0 + 1e-12;

        const CavitySpec shifted =
            CavitySpec::from_acceleration_factor(h, cfg.s, u + 1.0);
        const ModeChannel ch2 = mode_channel(shifted, spectrum);
        periodic_ok = periodic_ok &&
                      std::abs(ch.f_plus - ch2.f_plus) <= 1e-12 &&
                      std::abs(ch.f_minus - ch2.f_minus) <= 1e-12 &&
                      std::abs(std::abs(ch.F_coh) - std::abs(ch2.F_coh)) <=
                          1e-12 &&
                      std::abs(std::conj(ch.G_k) * ch.F_coh -
                               std::conj(ch2.G_k) * ch2.F_coh) <= 1e-12;
      }
    }
  }
  out.add("channel Choi positivity", worst_choi >= -1e-12,
          "min Choi eigenvalue " + num(worst_choi));
  out.add("channel second-order unitarity", worst_defect <= 0.0,
          "max defect over allowance " + num(worst_defect));
  out.add("channel coherence bounded", coherence_ok, "|F| <= 1 + 1e-12");
  out.add("channel periodicity in u", periodic_ok,
          "u and u+1 give the same channel content");
}

void check_closed_form(Collector& out, const GameConfig& cfg,
                       std::uint64_t seed) {
  std::mt19937_64 rng(seed + 3);
  double worst_matrix = 0.0;
  double worst_eigs = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    GameConfig draw = cfg;
    draw.u_b = 2.0 * (rng() >> 11) * 0x1.0p-53;
    draw.u_c = 2.0 * (rng() >> 11) * 0x1.0p-53;
    draw.synthetic.strength = cfg.synthetic.strength * (0.5 + (rng() >> 11) * 0x1.0p-53);
    draw.swap_roles = false;

    const DensityMatrix rho = evolve_protocol(draw);
    const DensityMatrix measured =
        project_measure(rho, MeasurementBasis::sigma_x(), 0);
    const DensityMatrix pipeline = partial_trace(measured, {0, 2});
    const ModeChannel ch = charlie_channel(draw);
    const DensityMatrix closed = closed_form_sigma_x_C(ch);
    worst_matrix = std::max(
        worst_matrix,
        (pipeline.matrix() - closed.matrix()).cwiseAbs().maxCoeff());

    const auto lambda =
        closed_form_eigenvalues(-ch.f_plus + 2.0 * ch.f_minus, ch.F_coh);
    const auto solved = eigenvalues_hermitian(closed.matrix());
    for (int i = 0; i < 4; ++i) {
      worst_eigs = std::max(worst_eigs, std::abs(lambda[i] - solved[3 - i]));
    }
  }
  out.add("closed-form state matches pipeline (50 draws)",
          worst_matrix <= 1e-12, "max entrywise deviation " + num(worst_matrix));
  out.add("closed-form eigenvalues match solver (50 draws)",
          worst_eigs <= 1e-12, "max deviation " + num(worst_eigs));
}

void check_grid(Collector& out, const GameConfig& cfg) {
  const SweepGrid grid{21, 21, 1.0};
  const auto reports = sweep(cfg, grid);

  double min_lhs = 1e300, max_slack_dev = 0.0, max_identity = 0.0;
  for (const auto& r : reports) {
    min_lhs = std::min(min_lhs, r.lhs);
    max_slack_dev = std::max(max_slack_dev, std::abs(r.slack - 1.0));
    max_identity = std::max(max_identity, r.identity_residual);
  }
  out.add("grid tripartite relation", min_lhs >= 1.0 - 1e-9,
          "min lhs " + num(min_lhs));
  out.add("grid slack constancy", max_slack_dev <= 1e-9,
          "max |slack - 1| " + num(max_slack_dev));
  out.add("grid identity residual", max_identity <= 1e-10,
          "max residual " + num(max_identity));

  const GameReport first = reports.front();
  const GameReport last = reports.back();
  const double corner_dev = std::abs(first.bound - last.bound);
  out.add("grid periodicity (corners)", corner_dev <= 1e-9,
          "|bound(0,0) - bound(1,1)| = " + num(corner_dev));

  bool fermionic_ok = true;
  bool marginal_ok = true;
  GameConfig point = cfg;
  for (int i = 0; i < grid.n_b; i += 4) {
    point.u_b = grid.u_max * i / (grid.n_b - 1);
    for (int j = 0; j < grid.n_c; j += 4) {
      point.u_c = grid.u_max * j / (grid.n_c - 1);
      const DensityMatrix rho = evolve_protocol(point);
      fermionic_ok = fermionic_ok && check_fermionic_consistency(rho).pass;
      const DensityMatrix marginal = partial_trace(rho, {0});
      Eigen::MatrixXcd expected(2, 2);
      expected << 2.0 / 3.0, 0.0, 0.0, 1.0 / 3.0;
      marginal_ok = marginal_ok &&
                    (marginal.matrix() - expected).cwiseAbs().maxCoeff() <=
                        1e-12;
    }
  }
  out.add("grid fermionic consistency", fermionic_ok,
          "all sampled grid states pass");
  out.add("grid inertial-agent marginal invariance", marginal_ok,
          "reduced state stays diag(2/3, 1/3)");
}

}  // namespace

std::vector<CheckResult> run_all_checks(const GameConfig& cfg,
                                        std::uint64_t seed) {
  Collector out;
  check_identity(out, seed);
  check_tripartite_relation(out, seed);
  check_bipartite_relation(out, seed);
  check_channel_validity(out, cfg);
  check_closed_form(out, cfg, seed);
  check_grid(out, cfg);
  return out.results;
}

}  // namespace cavur
