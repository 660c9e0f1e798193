#include "cavur/random_states.hpp"

#include <numeric>

namespace cavur {

Eigen::MatrixXcd ginibre(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return g;
}

DensityMatrix random_density_matrix(std::mt19937_64& rng,
                                    std::vector<int> subsystem_dims) {
  const int d = std::accumulate(subsystem_dims.begin(), subsystem_dims.end(),
                                1, std::multiplies<>());
  const Eigen::MatrixXcd g = ginibre(rng, d, d);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint().eval()) / 2.0;
  return DensityMatrix(std::move(rho), std::move(subsystem_dims));
}

MeasurementBasis random_basis(std::mt19937_64& rng, int dim,
                              const std::string& label) {
  const Eigen::MatrixXcd g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the phase convention so the basis is well defined.
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  std::vector<Eigen::VectorXcd> vectors;
  vectors.reserve(dim);
  for (int j = 0; j < dim; ++j) vectors.push_back(q.col(j));
  return MeasurementBasis(std::move(vectors), label);
}

}  // namespace cavur
