#include "hypervec/reference.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace hypervec::ref {

std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("circular_convolve: size mismatch");
    std::size_t d = a.size();
    std::vector<double> out(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t j = (k + d - i) % d;
            acc += a[i] * b[j];
        }
        out[k] = acc;
    }
    return out;
}

std::vector<double> inverse_by_solve(const std::vector<double>& a) {
    std::size_t d = a.size();
    // Circulant matrix C with C x = a (*) x: C(r, c) = a[(r - c) mod d].
    Eigen::MatrixXd C(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            C(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                a[(r + d - c) % d];
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    e0(0) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
    if (!lu.isInvertible()) throw std::runtime_error("inverse_by_solve: singular circulant");
    Eigen::VectorXd x = lu.solve(e0);
    return std::vector<double>(x.data(), x.data() + d);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine: size mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine: zero vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace hypervec::ref
