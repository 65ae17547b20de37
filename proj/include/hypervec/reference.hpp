#pragma once

#include <cstddef>
#include <vector>

namespace hypervec::ref {

/// Direct O(d^2) circular convolution. Serial reference used as the
/// independent oracle for the FFT-based binding path.
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b);

/// Exact convolution inverse obtained by solving the circulant linear system
/// C_a x = delta_0 with dense LU. O(d^3); oracle for the spectral reciprocal.
/// Throws if the system is numerically singular.
std::vector<double> inverse_by_solve(const std::vector<double>& a);

/// Plain cosine similarity, loop form.
double cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace hypervec::ref
