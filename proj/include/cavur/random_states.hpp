#pragma once

#include <random>
#include <vector>

#include "cavur/qstate.hpp"

namespace cavur {

/// Matrix with iid standard-complex-Gaussian entries.
Eigen::MatrixXcd ginibre(std::mt19937_64& rng, int rows, int cols);

/// Full-rank random density matrix G G^dagger / Tr.
DensityMatrix random_density_matrix(std::mt19937_64& rng,
                                    std::vector<int> subsystem_dims);

/// Haar-random orthonormal basis (QR of a Ginibre matrix).
MeasurementBasis random_basis(std::mt19937_64& rng, int dim,
                              const std::string& label = "random");

}  // namespace cavur
