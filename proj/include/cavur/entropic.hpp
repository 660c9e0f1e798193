#pragma once

#include <optional>
#include <vector>

#include "cavur/qstate.hpp"

namespace cavur {

/// Holevo quantity of a measurement seen from one memory subsystem:
/// J = H(rho_E) - sum_j p_j H(rho_E|j), together with the conditional
/// memory states that enter the sum. A skipped (zero-probability)
/// outcome leaves an empty slot; its conditional state is undefined.
struct HolevoReport {
  double value = 0.0;
  std::vector<double> outcome_probs;
  std::vector<std::optional<DensityMatrix>> conditional_memory_states;
};

/// One evaluated uncertainty relation: per-measurement conditional
/// entropies on the left, the bound on the right, and the residual of
/// the exact decomposition sum_i H(M_i|E_i) = sum_i H(M_i) - sum_i J_i
/// (nonzero residual signals numerical corruption, not a violation).
struct UncertaintyReport {
  std::vector<double> lhs_terms;
  double state_independent_bound = 0.0;
  std::vector<double> holevo_terms;
  double bound = 0.0;
  double slack = 0.0;
  double overlap_c = 0.0;
  double identity_residual = 0.0;

  double lhs() const;
};

/// Both right-hand sides of the bipartite relation: the conditional
/// entropy form log2(1/c) + H(A|B) and the Holevo form
/// log2(1/c) + H(A) - J(B|M1) - J(B|M2).
struct BipartiteReports {
  UncertaintyReport memory_bound;
  UncertaintyReport holevo_bound;
};

/// A measurement on subsystem 0 whose outcome one memory tries to guess.
struct MemoryAssignment {
  MeasurementBasis basis;
  int memory = 1;
};

/// H(rest|memory) = H(rho) - H(rho_memory). Negative for entangled states.
double conditional_entropy(const DensityMatrix& rho, int memory);

/// H(M|E) = H(rho_ME) - H(rho_E) where rho_ME is the post-measurement
/// state on (measured, memory). Always >= 0.
double measured_conditional_entropy(const DensityMatrix& rho,
                                    const MeasurementBasis& basis,
                                    int measured, int memory);

/// c = max_{i,j} |<u_i|v_j>|^2 over the two eigenbases.
double max_overlap(const MeasurementBasis& b1, const MeasurementBasis& b2);

/// Holevo quantity of measuring `basis` on `measured`, with side
/// information held by `memory`. Outcomes with probability <= 1e-14 are
/// skipped; their conditional state is undefined and the p*H limit is 0.
HolevoReport holevo_quantity(const DensityMatrix& rho,
                             const MeasurementBasis& basis, int measured,
                             int memory);

/// Bipartite uncertainty relation for two measurements on the non-memory
/// subsystem, evaluated in both the conditional-entropy and the Holevo
/// form.
BipartiteReports check_bipartite(const DensityMatrix& rho_ab,
                                 const MeasurementBasis& b1,
                                 const MeasurementBasis& b2, int memory);

/// Multi-memory uncertainty relation: all measurements act on subsystem
/// 0, each with its own distinct memory. `state_independent_bound` is
/// the caller-supplied B; the relation reads
/// sum_i H(M_i|E_i) >= B - sum_i J(E_i|M_i).
UncertaintyReport check_multi(const DensityMatrix& rho,
                              const std::vector<MemoryAssignment>& assignments,
                              double state_independent_bound);

}  // namespace cavur
