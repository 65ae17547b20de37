#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hypervec {

/// Half-complex spectrum of a real signal of length d: d/2+1 bins.
struct Spectrum {
    std::vector<std::complex<double>> bins;
    std::size_t d = 0;
};

/// Forward real-to-complex transform (unnormalized, FFTW convention).
Spectrum rfft(const double* data, std::size_t d);
Spectrum rfft(const std::vector<double>& v);

/// Inverse complex-to-real transform, scaled by 1/d so irfft(rfft(x)) == x.
std::vector<double> irfft(const Spectrum& s);
void irfft_into(const Spectrum& s, double* out);

/// dot(a, b) computed from spectra via Parseval (saves inverse transforms
/// on decode hot paths). Requires matching d.
double spectral_dot(const Spectrum& a, const Spectrum& b);

/// Squared L2 norm from a spectrum.
double spectral_norm_sq(const Spectrum& s);

}  // namespace hypervec
