#pragma once

#include <cstddef>
#include <vector>

#include "hypervec/fft.hpp"
#include "hypervec/rng.hpp"

namespace hypervec {

/// Dense real vector of dimension d >= 2. The atom of the whole toolkit:
/// concepts are vectors, structures are sums of convolution-bound vectors.
struct HyperVector {
    std::vector<double> v;

    std::size_t dim() const { return v.size(); }
    double* data() { return v.data(); }
    const double* data() const { return v.data(); }
};

/// I.i.d. Gaussian sample, mean 0, variance 1/d (expected squared norm 1).
HyperVector random_hypervector(std::size_t d, counter_rng& rng);

/// Project a vector to unit spectral magnitude per frequency bin (phases
/// kept; zero bins become 1). The result has exactly unit L2 norm and its
/// convolution inverse equals its correlation (conjugate spectrum), so
/// unbinding does not amplify bundle noise.
HyperVector make_unitary(const HyperVector& a);

/// Default sampler: Gaussian draw, then unitary projection when requested.
HyperVector sample_hypervector(std::size_t d, counter_rng& rng, bool unitary);

/// Circular convolution via FFT, O(d log d). Commutative and bilinear.
HyperVector bind(const HyperVector& a, const HyperVector& b);

/// Elementwise sum.
HyperVector bundle(const HyperVector& a, const HyperVector& b);

/// Exact convolution inverse: componentwise spectral reciprocal. Spectral
/// magnitudes below `floor` are clamped to `floor` (phase preserved) before
/// reciprocation, which keeps the operation total; `clamped`, when given,
/// reports whether any bin was clamped.
HyperVector inverse(const HyperVector& a, double floor = 1e-8, bool* clamped = nullptr);

/// Convolution unit: delta vector (1, 0, ..., 0).
HyperVector identity(std::size_t d);

/// Cosine similarity in [-1, 1]. Throws on zero-norm input.
double cosine(const HyperVector& a, const HyperVector& b);

double dot(const HyperVector& a, const HyperVector& b);
double norm(const HyperVector& a);

/// Spectral-domain helpers shared by the encoder/decoder hot paths.
Spectrum to_spectrum(const HyperVector& a);
HyperVector from_spectrum(const Spectrum& s);
Spectrum spectral_multiply(const Spectrum& a, const Spectrum& b);
Spectrum spectral_reciprocal(const Spectrum& a, double floor = 1e-8, bool* clamped = nullptr);
void spectral_accumulate(Spectrum& acc, const Spectrum& term);

}  // namespace hypervec
