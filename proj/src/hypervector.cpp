#include "hypervec/hypervector.hpp"

#include <cmath>
#include <stdexcept>

namespace hypervec {

namespace {

void check_dim(std::size_t d) {
    if (d < 2) throw std::invalid_argument("hypervector dimension must be >= 2");
}

void check_match(const HyperVector& a, const HyperVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("hypervector dimension mismatch");
    check_dim(a.dim());
}

}  // namespace

HyperVector random_hypervector(std::size_t d, counter_rng& rng) {
    check_dim(d);
    HyperVector out;
    out.v.resize(d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) out.v[i] = rng.next_gaussian() * scale;
    return out;
}

HyperVector make_unitary(const HyperVector& a) {
    check_dim(a.dim());
    Spectrum s = rfft(a.v);
    for (auto& bin : s.bins) {
        double mag = std::abs(bin);
        bin = (mag == 0.0) ? std::complex<double>(1.0, 0.0) : bin / mag;
    }
    return HyperVector{irfft(s)};
}

HyperVector sample_hypervector(std::size_t d, counter_rng& rng, bool unitary) {
    HyperVector x = random_hypervector(d, rng);
    return unitary ? make_unitary(x) : x;
}

HyperVector bind(const HyperVector& a, const HyperVector& b) {
    check_match(a, b);
    Spectrum sa = rfft(a.v);
    Spectrum sb = rfft(b.v);
    for (std::size_t k = 0; k < sa.bins.size(); ++k) sa.bins[k] *= sb.bins[k];
    return HyperVector{irfft(sa)};
}

HyperVector bundle(const HyperVector& a, const HyperVector& b) {
    check_match(a, b);
    HyperVector out = a;
    for (std::size_t i = 0; i < b.dim(); ++i) out.v[i] += b.v[i];
    return out;
}

HyperVector inverse(const HyperVector& a, double floor, bool* clamped) {
    check_dim(a.dim());
    if (floor <= 0.0) throw std::invalid_argument("inverse: floor must be positive");
    Spectrum s = rfft(a.v);
    Spectrum r = spectral_reciprocal(s, floor, clamped);
    return HyperVector{irfft(r)};
}

HyperVector identity(std::size_t d) {
    check_dim(d);
    HyperVector out;
    out.v.assign(d, 0.0);
    out.v[0] = 1.0;
    return out;
}

double dot(const HyperVector& a, const HyperVector& b) {
    check_match(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc += a.v[i] * b.v[i];
    return acc;
}

double norm(const HyperVector& a) { return std::sqrt(dot(a, a)); }

double cosine(const HyperVector& a, const HyperVector& b) {
    check_match(a, b);
    double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) throw std::invalid_argument("cosine: zero vector");
    double c = dot(a, b) / (na * nb);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}

Spectrum to_spectrum(const HyperVector& a) { return rfft(a.v); }

HyperVector from_spectrum(const Spectrum& s) { return HyperVector{irfft(s)}; }

Spectrum spectral_multiply(const Spectrum& a, const Spectrum& b) {
    if (a.d != b.d) throw std::invalid_argument("spectral_multiply: dimension mismatch");
    Spectrum out = a;
    for (std::size_t k = 0; k < out.bins.size(); ++k) out.bins[k] *= b.bins[k];
    return out;
}

Spectrum spectral_reciprocal(const Spectrum& a, double floor, bool* clamped) {
    Spectrum out = a;
    bool any = false;
    for (auto& bin : out.bins) {
        double mag = std::abs(bin);
        std::complex<double> z = bin;
        if (mag < floor) {
            any = true;
            z = (mag == 0.0) ? std::complex<double>(floor, 0.0) : z * (floor / mag);
        }
        bin = 1.0 / z;
    }
    if (clamped) *clamped = any;
    return out;
}

void spectral_accumulate(Spectrum& acc, const Spectrum& term) {
    if (acc.d != term.d) throw std::invalid_argument("spectral_accumulate: dimension mismatch");
    for (std::size_t k = 0; k < acc.bins.size(); ++k) acc.bins[k] += term.bins[k];
}

}  // namespace hypervec
