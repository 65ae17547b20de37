#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hypervec/graph.hpp"

namespace hypervec {

/// Diagnostic linear-algebra companions of a graph: oriented incidence
/// matrix, Laplacian, its eigensystem, the Dirac operator (symmetric square
/// root of the Laplacian), and the per-vertex coefficient matrices.
struct SpectralBundle {
    Eigen::MatrixXd incidence;     ///< n x m, entries in {-1, 0, 1}
    Eigen::MatrixXd laplacian;     ///< I * I^T, symmetric PSD
    Eigen::MatrixXd eigenvectors;  ///< Q, columns ascending by eigenvalue
    Eigen::VectorXd eigenvalues;   ///< clamped to be nonnegative
    Eigen::MatrixXd dirac;         ///< D = Q sqrt(L) Q^T, so D * D = laplacian
    std::vector<Eigen::MatrixXd> coefficients;  ///< E_k = D * diag(e_k); sum = D
};

/// Canonical orientation: edge (i, j) with i < j points i -> j, so its
/// column holds -1 at row i and +1 at row j.
Eigen::MatrixXd incidence_matrix(const Graph& g);

Eigen::MatrixXd laplacian(const Graph& g);

/// Full diagnostic computation (one dense eigendecomposition, n <= 512).
/// Eigenvalues in [-eps, 0) are clamped to 0 with eps =
/// eig_tolerance * max(lambda_max, 1); anything below -eps is a numerical
/// failure and throws.
SpectralBundle spectral_bundle(const Graph& g, double eig_tolerance = 1e-10);

Eigen::MatrixXd dirac(const Graph& g, double eig_tolerance = 1e-10);

std::vector<Eigen::MatrixXd> coefficient_matrices(const Graph& g, double eig_tolerance = 1e-10);

/// Count of eigenvalues at zero (<= eps as above). For any graph this
/// equals the number of connected components.
int zero_eigenvalue_multiplicity(const SpectralBundle& bundle, double eig_tolerance = 1e-10);

}  // namespace hypervec
