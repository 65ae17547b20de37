#include "hypervec/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace hypervec {

namespace {

// FFTW plan creation is not thread-safe; execution through the new-array API
// is. Plans are cached per dimension and created with FFTW_UNALIGNED so they
// accept any caller buffer.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
};

std::mutex g_plan_mutex;
std::unordered_map<std::size_t, PlanPair>& plan_cache() {
    static std::unordered_map<std::size_t, PlanPair> cache;
    return cache;
}

PlanPair get_plans(std::size_t d) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    std::vector<double> real(d, 0.0);
    std::vector<std::complex<double>> cplx(d / 2 + 1);
    PlanPair p;
    p.fwd = fftw_plan_dft_r2c_1d(static_cast<int>(d), real.data(),
                                 reinterpret_cast<fftw_complex*>(cplx.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.inv = fftw_plan_dft_c2r_1d(static_cast<int>(d),
                                 reinterpret_cast<fftw_complex*>(cplx.data()),
                                 real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.inv) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(d, p);
    return p;
}

}  // namespace

Spectrum rfft(const double* data, std::size_t d) {
    if (d < 2) throw std::invalid_argument("rfft: dimension must be >= 2");
    PlanPair p = get_plans(d);
    Spectrum s;
    s.d = d;
    s.bins.resize(d / 2 + 1);
    // The r2c transform does not modify its input; FFTW's signature is
    // non-const for historical reasons.
    fftw_execute_dft_r2c(p.fwd, const_cast<double*>(data),
                         reinterpret_cast<fftw_complex*>(s.bins.data()));
    return s;
}

Spectrum rfft(const std::vector<double>& v) { return rfft(v.data(), v.size()); }

void irfft_into(const Spectrum& s, double* out) {
    PlanPair p = get_plans(s.d);
    // The c2r transform destroys its complex input, so transform a copy.
    std::vector<std::complex<double>> tmp = s.bins;
    fftw_execute_dft_c2r(p.inv, reinterpret_cast<fftw_complex*>(tmp.data()), out);
    double scale = 1.0 / static_cast<double>(s.d);
    for (std::size_t i = 0; i < s.d; ++i) out[i] *= scale;
}

std::vector<double> irfft(const Spectrum& s) {
    std::vector<double> out(s.d);
    irfft_into(s, out.data());
    return out;
}

double spectral_dot(const Spectrum& a, const Spectrum& b) {
    if (a.d != b.d) throw std::invalid_argument("spectral_dot: dimension mismatch");
    std::size_t nb = a.bins.size();
    double acc = a.bins[0].real() * b.bins[0].real();
    std::size_t last = nb - 1;
    bool even = (a.d % 2 == 0);
    for (std::size_t k = 1; k < nb; ++k) {
        double term = a.bins[k].real() * b.bins[k].real() +
                      a.bins[k].imag() * b.bins[k].imag();
        if (even && k == last) acc += term;
        else acc += 2.0 * term;
    }
    return acc / static_cast<double>(a.d);
}

double spectral_norm_sq(const Spectrum& s) { return spectral_dot(s, s); }

}  // namespace hypervec
