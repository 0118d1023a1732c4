#pragma once

#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qlp/graph.hpp"

namespace qlp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Raised when a factorization or eigensolver fails to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix adjacency_dense(const Graph& g);
SparseMatrix adjacency_sparse(const Graph& g);

/// A = V diag(eigenvalues) V^T, eigenvalues ascending, V orthogonal.
struct SymmetricEigen {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Dense symmetric eigendecomposition (Householder tridiagonalization + implicit QR).
SymmetricEigen symmetric_eigen(Matrix a);

/// Largest |eigenvalue| of the adjacency, i.e. the spectral norm.
double spectral_norm(const Graph& g);

/// Replaces m by (m + m^T) / 2.
void symmetrize(Matrix& m);

}  // namespace qlp
