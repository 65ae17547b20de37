#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hypervec/decoder.hpp"
#include "hypervec/hypervector.hpp"
#include "hypervec/reference.hpp"
#include "hypervec/rng.hpp"

namespace hv = hypervec;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

/// Compare the O(d^2) reference convolution against the FFT kernel: both
/// must agree to rounding, and the timing gap is the point of the FFT path.
void bench_bind() {
    std::cout << "bind kernel: reference O(d^2) vs FFT O(d log d)\n";
    std::cout << "d,ref_ms,fft_ms,speedup,max_abs_diff\n";
    for (std::size_t d : {512u, 1024u, 2048u, 4096u}) {
        hv::counter_rng rng(7, hv::stream_role::generator, d);
        hv::HyperVector a = hv::random_hypervector(d, rng);
        hv::HyperVector b = hv::random_hypervector(d, rng);

        int reps = d <= 1024 ? 20 : 5;
        auto t0 = std::chrono::steady_clock::now();
        std::vector<double> ref;
        for (int r = 0; r < reps; ++r) ref = hv::ref::circular_convolve(a.v, b.v);
        double ref_ms = ms_since(t0) / reps;

        int fft_reps = 200;
        auto t1 = std::chrono::steady_clock::now();
        hv::HyperVector fast;
        for (int r = 0; r < fft_reps; ++r) fast = hv::bind(a, b);
        double fft_ms = ms_since(t1) / fft_reps;

        double diff = 0.0;
        for (std::size_t k = 0; k < d; ++k) diff = std::max(diff, std::abs(ref[k] - fast.v[k]));

        std::cout << d << "," << std::setprecision(4) << ref_ms << "," << fft_ms << ","
                  << ref_ms / fft_ms << "," << std::scientific << diff << std::defaultfloat
                  << "\n";
    }
}

/// The capacity sweep parallelizes across trials; compare 1 thread against
/// the machine's default. Results must be identical since every trial owns
/// a preassigned output slot and substream.
void bench_sweep() {
    std::cout << "\ncapacity sweep: serial vs parallel trials (d=1024, n=50, 8 trials)\n";
    std::cout << "threads,ms,mean_correct_n50\n";
#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif
    for (int threads : {1, max_threads}) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#endif
        auto t0 = std::chrono::steady_clock::now();
        hv::CapacityResult result = hv::capacity_sweep(1024, {50}, 8, 99);
        double ms = ms_since(t0);
        std::cout << threads << "," << std::setprecision(4) << ms << ","
                  << std::setprecision(10) << result.per_n[0].mean_correct_cs << "\n";
        if (threads == max_threads) break;
    }
}

}  // namespace

int main() {
    bench_bind();
    bench_sweep();
    return 0;
}
