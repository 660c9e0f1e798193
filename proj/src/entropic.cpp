#include "cavur/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "cavur/errors.hpp"

namespace cavur {

double UncertaintyReport::lhs() const {
  return std::accumulate(lhs_terms.begin(), lhs_terms.end(), 0.0);
}

double conditional_entropy(const DensityMatrix& rho, int memory) {
  if (memory < 0 || memory >= rho.num_subsystems()) {
    throw std::invalid_argument("conditional_entropy: memory index out of range");
  }
  if (rho.num_subsystems() < 2) {
    throw std::invalid_argument("conditional_entropy: need at least two subsystems");
  }
  return von_neumann_entropy(rho) -
         von_neumann_entropy(partial_trace(rho, {memory}));
}

double measured_conditional_entropy(const DensityMatrix& rho,
                                    const MeasurementBasis& basis,
                                    int measured, int memory) {
  if (measured == memory) {
    throw std::invalid_argument("measured and memory subsystems must differ");
  }
  const DensityMatrix after = project_measure(rho, basis, measured);
  std::vector<int> keep{measured, memory};
  std::sort(keep.begin(), keep.end());
  const DensityMatrix rho_me = partial_trace(after, keep);
  const DensityMatrix rho_e = partial_trace(after, {memory});
  return von_neumann_entropy(rho_me) - von_neumann_entropy(rho_e);
}

double max_overlap(const MeasurementBasis& b1, const MeasurementBasis& b2) {
  if (b1.dim() != b2.dim()) {
    throw std::invalid_argument("max_overlap: basis dimensions differ");
  }
  double c = 0.0;
  for (int i = 0; i < b1.dim(); ++i) {
    for (int j = 0; j < b2.dim(); ++j) {
      c = std::max(c, std::norm(b1.vector(i).dot(b2.vector(j))));
    }
  }
  return c;
}

namespace {

// <u_j| rho |u_j> on the measured subsystem: an (unnormalized) operator
// on the remaining subsystems, with weight Tr = p_j.
Eigen::MatrixXcd sandwich(const DensityMatrix& rho,
                          const Eigen::VectorXcd& ket, int measured) {
  const auto& dims = rho.subsystem_dims();
  int pre = 1, post = 1;
  for (int i = 0; i < measured; ++i) pre *= dims[i];
  for (int i = measured + 1; i < rho.num_subsystems(); ++i) post *= dims[i];
  const int d = dims[measured];
  const int rest = pre * post;

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rest, rest);
  const auto& m = rho.matrix();
  // Composite index = (pre, measured, post); rest index = (pre, post).
  for (int p1 = 0; p1 < pre; ++p1) {
    for (int q1 = 0; q1 < post; ++q1) {
      const int r = p1 * post + q1;
      for (int p2 = 0; p2 < pre; ++p2) {
        for (int q2 = 0; q2 < post; ++q2) {
          const int c = p2 * post + q2;
          Complex sum = 0.0;
          for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
              sum += std::conj(ket(a)) * ket(b) *
                     m((p1 * d + a) * post + q1, (p2 * d + b) * post + q2);
            }
          }
          out(r, c) = sum;
        }
      }
    }
  }
  return out;
}

}  // namespace

HolevoReport holevo_quantity(const DensityMatrix& rho,
                             const MeasurementBasis& basis, int measured,
                             int memory) {
  if (measured == memory) {
    throw std::invalid_argument("measured and memory subsystems must differ");
  }
  if (basis.dim() != rho.subsystem_dims().at(measured)) {
    throw std::invalid_argument("holevo_quantity: basis dimension mismatch");
  }

  const auto& dims = rho.subsystem_dims();
  // Position of the memory subsystem once `measured` is removed.
  std::vector<int> rest_dims;
  int memory_in_rest = -1;
  for (int i = 0; i < rho.num_subsystems(); ++i) {
    if (i == measured) continue;
    if (i == memory) memory_in_rest = static_cast<int>(rest_dims.size());
    rest_dims.push_back(dims[i]);
  }

  HolevoReport report;
  const DensityMatrix rho_e = partial_trace(rho, {memory});
  report.value = von_neumann_entropy(rho_e);

  for (int j = 0; j < basis.dim(); ++j) {
    Eigen::MatrixXcd cond = sandwich(rho, basis.vector(j), measured);
    const double p = cond.trace().real();
    report.outcome_probs.push_back(std::max(p, 0.0));
    if (p <= tol::zero_outcome) {
      report.conditional_memory_states.emplace_back(std::nullopt);
      continue;
    }
    DensityMatrix state(cond / p, rest_dims);
    if (rest_dims.size() > 1) {
      state = partial_trace(state, {memory_in_rest});
    }
    report.value -= p * von_neumann_entropy(state);
    report.conditional_memory_states.emplace_back(std::move(state));
  }
  return report;
}

namespace {

double shannon_outcomes(const DensityMatrix& rho, const MeasurementBasis& b,
                        int measured) {
  return outcome_probs(rho, b, measured).entropy();
}

}  // namespace

BipartiteReports check_bipartite(const DensityMatrix& rho_ab,
                                 const MeasurementBasis& b1,
                                 const MeasurementBasis& b2, int memory) {
  if (rho_ab.num_subsystems() != 2) {
    throw std::invalid_argument("check_bipartite: state must be bipartite");
  }
  if (memory != 0 && memory != 1) {
    throw std::invalid_argument("check_bipartite: memory must be 0 or 1");
  }
  const int measured = 1 - memory;
  const double c = max_overlap(b1, b2);
  const double log_inv_c = std::log2(1.0 / c);

  const double h1 = measured_conditional_entropy(rho_ab, b1, measured, memory);
  const double h2 = measured_conditional_entropy(rho_ab, b2, measured, memory);
  const double j1 = holevo_quantity(rho_ab, b1, measured, memory).value;
  const double j2 = holevo_quantity(rho_ab, b2, measured, memory).value;
  const double hm1 = shannon_outcomes(rho_ab, b1, measured);
  const double hm2 = shannon_outcomes(rho_ab, b2, measured);
  const double residual = std::abs((h1 + h2) - (hm1 + hm2) + (j1 + j2));

  BipartiteReports out;
  out.memory_bound.lhs_terms = {h1, h2};
  out.memory_bound.state_independent_bound = log_inv_c;
  out.memory_bound.holevo_terms = {j1, j2};
  out.memory_bound.overlap_c = c;
  out.memory_bound.identity_residual = residual;
  out.memory_bound.bound = log_inv_c + conditional_entropy(rho_ab, memory);
  out.memory_bound.slack = out.memory_bound.lhs() - out.memory_bound.bound;

  out.holevo_bound = out.memory_bound;
  const double h_measured_marginal =
      von_neumann_entropy(partial_trace(rho_ab, {measured}));
  out.holevo_bound.bound = log_inv_c + h_measured_marginal - j1 - j2;
  out.holevo_bound.slack = out.holevo_bound.lhs() - out.holevo_bound.bound;
  return out;
}

UncertaintyReport check_multi(const DensityMatrix& rho,
                              const std::vector<MemoryAssignment>& assignments,
                              double state_independent_bound) {
  if (assignments.empty()) {
    throw std::invalid_argument("check_multi: no measurements given");
  }
  if (state_independent_bound <= 0.0) {
    throw std::invalid_argument(
        "check_multi: state-independent bound must be positive");
  }
  std::set<int> memories;
  for (const auto& a : assignments) {
    if (a.memory <= 0 || a.memory >= rho.num_subsystems()) {
      throw std::invalid_argument("check_multi: memory index out of range");
    }
    if (!memories.insert(a.memory).second) {
      throw std::invalid_argument("check_multi: duplicate memory assignment");
    }
  }

  UncertaintyReport report;
  report.state_independent_bound = state_independent_bound;
  double shannon_sum = 0.0;
  for (const auto& a : assignments) {
    report.lhs_terms.push_back(
        measured_conditional_entropy(rho, a.basis, 0, a.memory));
    report.holevo_terms.push_back(
        holevo_quantity(rho, a.basis, 0, a.memory).value);
    shannon_sum += shannon_outcomes(rho, a.basis, 0);
  }
  const double holevo_sum = std::accumulate(report.holevo_terms.begin(),
                                            report.holevo_terms.end(), 0.0);
  report.bound = state_independent_bound - holevo_sum;
  report.slack = report.lhs() - report.bound;
  report.identity_residual = std::abs(report.lhs() - (shannon_sum - holevo_sum));
  report.overlap_c =
      (assignments.size() == 2)
          ? max_overlap(assignments[0].basis, assignments[1].basis)
          : std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace cavur
