#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavur {

using Complex = std::complex<double>;

// Numerical tolerances shared across the state layer.
namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double unit_trace = 1e-12;
// Perturbative constructions can produce eigenvalues slightly below zero;
// values in [psd_floor, 0) are clamped, anything below is an error.
inline constexpr double psd_floor = -1e-10;
inline constexpr double orthonormality = 1e-12;
inline constexpr double probability_floor = -1e-12;
inline constexpr double probability_sum = 1e-10;
// Outcomes with probability at or below this weight are skipped when
// forming conditional states (the p -> 0 limit of p*H is zero).
inline constexpr double zero_outcome = 1e-14;
}  // namespace tol

/// Density matrix over an ordered register of small subsystems.
///
/// Subsystem 0 is the most significant factor of the composite index
/// (ordering (A, B, C) throughout). Construction validates Hermiticity,
/// unit trace and positive semidefiniteness.
class DensityMatrix {
 public:
  DensityMatrix(Eigen::MatrixXcd matrix, std::vector<int> subsystem_dims);

  /// |ket><ket| with the given subsystem split; ket is normalized first.
  static DensityMatrix pure(const Eigen::VectorXcd& ket,
                            std::vector<int> subsystem_dims);

  static DensityMatrix maximally_mixed(std::vector<int> subsystem_dims);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& subsystem_dims() const { return dims_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
  std::vector<int> dims_;
};

/// Orthonormal eigenbasis of an observable; carries rank-1 projectors.
class MeasurementBasis {
 public:
  MeasurementBasis(std::vector<Eigen::VectorXcd> vectors, std::string label);

  static MeasurementBasis sigma_x();
  static MeasurementBasis sigma_y();
  static MeasurementBasis sigma_z();

  int dim() const { return static_cast<int>(vectors_.size()); }
  const Eigen::VectorXcd& vector(int j) const { return vectors_.at(j); }
  Eigen::MatrixXcd projector(int j) const;
  const std::string& label() const { return label_; }

 private:
  std::vector<Eigen::VectorXcd> vectors_;
  std::string label_;
};

/// Outcome distribution; entries in [-1e-12, 0) are clamped to zero and
/// the total must be 1 within 1e-10.
class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> probs);

  double operator[](std::size_t j) const { return probs_.at(j); }
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }

  /// Shannon entropy in bits.
  double entropy() const;

 private:
  std::vector<double> probs_;
};

/// Kronecker product; subsystem lists concatenate.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the given subsystems (ascending order, nonempty).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

/// Eigenvalues of a Hermitian matrix, descending. The input must be
/// Hermitian within 1e-10 entrywise.
std::vector<double> eigenvalues_hermitian(const Eigen::MatrixXcd& m);

/// Single entropy term -x log2(x), with entropy_term(0) = 0.
/// Accepts x in [-1e-12, 1 + 1e-12]; values outside are an error.
double entropy_term(double x);

/// Von Neumann entropy in bits. Eigenvalues in [-1e-10, 0) are clamped
/// to zero with a logged warning; anything lower is an error.
double von_neumann_entropy(const DensityMatrix& rho);

/// Projective measurement on one subsystem without readout:
/// sum_j (Pi_j (x) 1) rho (Pi_j (x) 1). Trace preserving, idempotent.
DensityMatrix project_measure(const DensityMatrix& rho,
                              const MeasurementBasis& basis, int target);

/// Outcome probabilities p_j = Tr[(Pi_j (x) 1) rho].
ProbabilityDistribution outcome_probs(const DensityMatrix& rho,
                                      const MeasurementBasis& basis,
                                      int target);

}  // namespace cavur
