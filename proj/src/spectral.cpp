#include "hypervec/spectral.hpp"

#include <cmath>
#include <string>

#include "hypervec/errors.hpp"

namespace hypervec {

namespace {

constexpr int kMaxVertices = 512;

void check_size(const Graph& g) {
    if (g.n < 1) throw validation_error("spectral diagnostics need n >= 1");
    if (g.n > kMaxVertices)
        throw validation_error("spectral diagnostics use a dense eigendecomposition and are "
                               "capped at n <= " +
                               std::to_string(kMaxVertices));
}

}  // namespace

Eigen::MatrixXd incidence_matrix(const Graph& g) {
    check_size(g);
    Eigen::MatrixXd inc = Eigen::MatrixXd::Zero(g.n, static_cast<int>(g.edges.size()));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        inc(g.edges[e].first - 1, static_cast<int>(e)) = -1.0;
        inc(g.edges[e].second - 1, static_cast<int>(e)) = 1.0;
    }
    return inc;
}

Eigen::MatrixXd laplacian(const Graph& g) {
    Eigen::MatrixXd inc = incidence_matrix(g);
    return inc * inc.transpose();
}

SpectralBundle spectral_bundle(const Graph& g, double eig_tolerance) {
    SpectralBundle b;
    b.incidence = incidence_matrix(g);
    b.laplacian = b.incidence * b.incidence.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b.laplacian);
    if (solver.info() != Eigen::Success)
        throw validation_error("laplacian eigendecomposition failed to converge");
    b.eigenvectors = solver.eigenvectors();
    b.eigenvalues = solver.eigenvalues();

    double lambda_max = b.eigenvalues.size() > 0 ? b.eigenvalues.maxCoeff() : 0.0;
    double eps = eig_tolerance * std::max(lambda_max, 1.0);
    for (int k = 0; k < b.eigenvalues.size(); ++k) {
        if (b.eigenvalues[k] < -eps)
            throw validation_error("laplacian eigenvalue " + std::to_string(b.eigenvalues[k]) +
                                   " is below the numerical tolerance -" + std::to_string(eps));
        if (b.eigenvalues[k] < 0.0) b.eigenvalues[k] = 0.0;
    }

    Eigen::VectorXd roots = b.eigenvalues.array().sqrt();
    b.dirac = b.eigenvectors * roots.asDiagonal() * b.eigenvectors.transpose();
    // Symmetrize away the asymmetry of order 1e-16 left by the triple product.
    b.dirac = 0.5 * (b.dirac + b.dirac.transpose()).eval();

    b.coefficients.reserve(g.n);
    for (int k = 0; k < g.n; ++k) {
        Eigen::MatrixXd ek = Eigen::MatrixXd::Zero(g.n, g.n);
        ek.col(k) = b.dirac.col(k);
        b.coefficients.push_back(std::move(ek));
    }
    return b;
}

Eigen::MatrixXd dirac(const Graph& g, double eig_tolerance) {
    return spectral_bundle(g, eig_tolerance).dirac;
}

std::vector<Eigen::MatrixXd> coefficient_matrices(const Graph& g, double eig_tolerance) {
    return spectral_bundle(g, eig_tolerance).coefficients;
}

int zero_eigenvalue_multiplicity(const SpectralBundle& bundle, double eig_tolerance) {
    double lambda_max = bundle.eigenvalues.size() > 0 ? bundle.eigenvalues.maxCoeff() : 0.0;
    double eps = eig_tolerance * std::max(lambda_max, 1.0);
    int count = 0;
    for (int k = 0; k < bundle.eigenvalues.size(); ++k)
        if (bundle.eigenvalues[k] <= eps) ++count;
    return count;
}

}  // namespace hypervec
