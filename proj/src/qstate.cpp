#include "cavur/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "cavur/errors.hpp"
#include "cavur/log.hpp"

namespace cavur {

namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Strides of each subsystem in the composite index; subsystem 0 is the
// most significant factor.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    strides[i] = strides[i + 1] * dims[i + 1];
  }
  return strides;
}

void check_subsystem_dims(const std::vector<int>& dims, int matrix_dim) {
  if (dims.empty()) {
    throw std::invalid_argument("subsystem_dims must be nonempty");
  }
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("subsystem dimensions must be >= 2");
  }
  if (product(dims) != matrix_dim) {
    std::ostringstream msg;
    msg << "subsystem dimensions multiply to " << product(dims)
        << " but the matrix has dimension " << matrix_dim;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd matrix,
                             std::vector<int> subsystem_dims)
    : matrix_(std::move(matrix)), dims_(std::move(subsystem_dims)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  check_subsystem_dims(dims_, static_cast<int>(matrix_.rows()));

  const double herm_defect =
      (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > tol::hermiticity) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (defect " << herm_defect << ")";
    throw std::invalid_argument(msg.str());
  }
  const double trace_defect = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_defect > tol::unit_trace) {
    std::ostringstream msg;
    msg << "density matrix trace differs from 1 by " << trace_defect;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_,
                                                         Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < tol::psd_floor) {
    std::ostringstream msg;
    msg << "density matrix has eigenvalue " << min_eig
        << " below the positivity floor";
    throw std::invalid_argument(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& ket,
                                  std::vector<int> subsystem_dims) {
  const double norm = ket.norm();
  if (norm <= 0.0) throw std::invalid_argument("pure state ket is zero");
  Eigen::VectorXcd unit = ket / norm;
  return DensityMatrix(unit * unit.adjoint(), std::move(subsystem_dims));
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<int> subsystem_dims) {
  const int d = product(subsystem_dims);
  return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / double(d),
                       std::move(subsystem_dims));
}

MeasurementBasis::MeasurementBasis(std::vector<Eigen::VectorXcd> vectors,
                                   std::string label)
    : vectors_(std::move(vectors)), label_(std::move(label)) {
  if (vectors_.empty()) throw std::invalid_argument("basis has no vectors");
  const auto d = vectors_.front().size();
  if (static_cast<std::size_t>(d) != vectors_.size()) {
    throw std::invalid_argument("basis must have dim vectors of length dim");
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != d) {
      throw std::invalid_argument("basis vectors have mismatched lengths");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex overlap = vectors_[i].dot(vectors_[j]);
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > tol::orthonormality) {
        std::ostringstream msg;
        msg << "basis '" << label_ << "' is not orthonormal: |<u" << i << "|u"
            << j << ">| deviates by " << std::abs(overlap - expected);
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

MeasurementBasis MeasurementBasis::sigma_x() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd plus(2), minus(2);
  plus << r, r;
  minus << r, -r;
  return MeasurementBasis({plus, minus}, "sigma_x");
}

MeasurementBasis MeasurementBasis::sigma_y() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd plus(2), minus(2);
  plus << Complex(r, 0.0), Complex(0.0, r);
  minus << Complex(r, 0.0), Complex(0.0, -r);
  return MeasurementBasis({plus, minus}, "sigma_y");
}

MeasurementBasis MeasurementBasis::sigma_z() {
  Eigen::VectorXcd zero(2), one(2);
  zero << 1.0, 0.0;
  one << 0.0, 1.0;
  return MeasurementBasis({zero, one}, "sigma_z");
}

Eigen::MatrixXcd MeasurementBasis::projector(int j) const {
  const Eigen::VectorXcd& v = vectors_.at(j);
  return v * v.adjoint();
}

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  double sum = 0.0;
  for (double& p : probs_) {
    if (p < tol::probability_floor) {
      std::ostringstream msg;
      msg << "probability " << p << " below tolerance";
      throw std::invalid_argument(msg.str());
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol::probability_sum) {
    std::ostringstream msg;
    msg << "probabilities sum to " << sum;
    throw std::invalid_argument(msg.str());
  }
}

double ProbabilityDistribution::entropy() const {
  double h = 0.0;
  for (double p : probs_) h += entropy_term(p);
  return h;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Eigen::MatrixXcd prod = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  std::vector<int> dims = a.subsystem_dims();
  dims.insert(dims.end(), b.subsystem_dims().begin(),
              b.subsystem_dims().end());
  return DensityMatrix(std::move(prod), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const auto& dims = rho.subsystem_dims();
  const int n = rho.num_subsystems();
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");

  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("keep set contains duplicate subsystems");
  }
  for (int k : kept) {
    if (k < 0 || k >= n) {
      std::ostringstream msg;
      msg << "subsystem index " << k << " out of range [0, " << n << ")";
      throw std::invalid_argument(msg.str());
    }
  }

  std::vector<int> traced;
  for (int i = 0; i < n; ++i) {
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  }

  const auto strides = strides_of(dims);
  std::vector<int> kept_dims, kept_strides, traced_strides, traced_dims;
  for (int k : kept) {
    kept_dims.push_back(dims[k]);
    kept_strides.push_back(strides[k]);
  }
  for (int t : traced) {
    traced_dims.push_back(dims[t]);
    traced_strides.push_back(strides[t]);
  }

  const int tr_count = product(traced.empty() ? std::vector<int>{1} : traced_dims);
  const int out_dim = product(kept_dims);
  const auto kept_out_strides = strides_of(kept_dims);

  // Offsets of every traced configuration in the composite index.
  std::vector<int> traced_offsets(tr_count, 0);
  for (int t = 0; t < tr_count; ++t) {
    int rem = t;
    for (int i = static_cast<int>(traced_dims.size()) - 1; i >= 0; --i) {
      traced_offsets[t] += (rem % traced_dims[i]) * traced_strides[i];
      rem /= traced_dims[i];
    }
  }
  auto kept_offset = [&](int flat) {
    int offset = 0;
    for (std::size_t i = 0; i < kept_dims.size(); ++i) {
      offset += (flat / kept_out_strides[i] % kept_dims[i]) * kept_strides[i];
    }
    return offset;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  const auto& m = rho.matrix();
  for (int r = 0; r < out_dim; ++r) {
    const int row_base = kept_offset(r);
    for (int c = 0; c < out_dim; ++c) {
      const int col_base = kept_offset(c);
      Complex sum = 0.0;
      for (int off : traced_offsets) sum += m(row_base + off, col_base + off);
      out(r, c) = sum;
    }
  }
  return DensityMatrix(std::move(out), std::move(kept_dims));
}

std::vector<double> eigenvalues_hermitian(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eigenvalues_hermitian: matrix must be square");
  }
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "eigenvalues_hermitian: input deviates from Hermitian by " << defect;
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      (m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + m.rows());
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  return eigs;
}

double entropy_term(double x) {
  if (x < -1e-12 || x > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "entropy_term argument " << x << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 0.0;
  return -x * std::log2(x);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double h = 0.0;
  for (double lambda : eigenvalues_hermitian(rho.matrix())) {
    if (lambda < tol::psd_floor) {
      std::ostringstream msg;
      msg << "eigenvalue " << lambda << " below positivity floor";
      throw InvariantViolation(msg.str());
    }
    if (lambda < 0.0) {
      log::warn("clamping eigenvalue " + std::to_string(lambda) + " to zero");
      lambda = 0.0;
    }
    // Eigensolver round-off can push an eigenvalue marginally above 1.
    h += entropy_term(std::min(lambda, 1.0));
  }
  return h;
}

namespace {

// Pi_j on the target subsystem, identity elsewhere.
Eigen::MatrixXcd embedded_projector(const DensityMatrix& rho,
                                    const MeasurementBasis& basis, int target,
                                    int j) {
  const auto& dims = rho.subsystem_dims();
  int pre = 1, post = 1;
  for (int i = 0; i < target; ++i) pre *= dims[i];
  for (int i = target + 1; i < rho.num_subsystems(); ++i) post *= dims[i];
  Eigen::MatrixXcd p = basis.projector(j);
  Eigen::MatrixXcd with_pre =
      Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(pre, pre), p);
  return Eigen::kroneckerProduct(with_pre,
                                 Eigen::MatrixXcd::Identity(post, post));
}

void check_target(const DensityMatrix& rho, const MeasurementBasis& basis,
                  int target) {
  if (target < 0 || target >= rho.num_subsystems()) {
    throw std::invalid_argument("measurement target out of range");
  }
  if (basis.dim() != rho.subsystem_dims()[target]) {
    std::ostringstream msg;
    msg << "basis dimension " << basis.dim() << " does not match subsystem "
        << target << " dimension " << rho.subsystem_dims()[target];
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

DensityMatrix project_measure(const DensityMatrix& rho,
                              const MeasurementBasis& basis, int target) {
  check_target(rho, basis, target);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    const Eigen::MatrixXcd p = embedded_projector(rho, basis, target, j);
    out += p * rho.matrix() * p;
  }
  // The projector sum can leave Hermiticity defects of a few ulp.
  out = (out + out.adjoint().eval()) / 2.0;
  return DensityMatrix(std::move(out), rho.subsystem_dims());
}

ProbabilityDistribution outcome_probs(const DensityMatrix& rho,
                                      const MeasurementBasis& basis,
                                      int target) {
  check_target(rho, basis, target);
  std::vector<double> probs;
  probs.reserve(basis.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    const Eigen::MatrixXcd p = embedded_projector(rho, basis, target, j);
    probs.push_back((p * rho.matrix()).trace().real());
  }
  return ProbabilityDistribution(std::move(probs));
}

}  // namespace cavur
