#include <cmath>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "hypervec/hypervector.hpp"
#include "hypervec/rng.hpp"

using namespace hypervec;

namespace {

constexpr std::size_t kDims[] = {128, 512, 2048};
constexpr int kTrials = 100;

double max_abs_diff(const HyperVector& a, const HyperVector& b) {
    REQUIRE(a.dim() == b.dim());
    double m = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k)
        m = std::max(m, std::abs(a.v[k] - b.v[k]));
    return m;
}

}  // namespace

TEST_SUITE_BEGIN("hypervector");

TEST_CASE("binding with the identity returns the operand") {
    for (std::size_t d : kDims) {
        CAPTURE(d);
        double worst = 0.0;
        for (int t = 0; t < kTrials; ++t) {
            counter_rng rng(100, stream_role::node_vector, static_cast<std::uint64_t>(t) * 8 + d);
            auto a = random_hypervector(d, rng);
            worst = std::max(worst, max_abs_diff(bind(a, identity(d)), a));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("binding is commutative bit for bit") {
    // Spectral products commute exactly (complex multiply of the same two
    // numbers) and the inverse transform sees identical input, so the two
    // orders agree bitwise, not just approximately.
    for (std::size_t d : kDims) {
        CAPTURE(d);
        for (int t = 0; t < kTrials; ++t) {
            counter_rng rng(101, stream_role::node_vector, static_cast<std::uint64_t>(t) * 8 + d);
            auto a = random_hypervector(d, rng);
            auto b = random_hypervector(d, rng);
            auto ab = bind(a, b);
            auto ba = bind(b, a);
            bool exact = ab.v == ba.v;
            CHECK(exact);
            if (!exact) return;
        }
    }
}

TEST_CASE("binding is associative to rounding error") {
    for (std::size_t d : kDims) {
        CAPTURE(d);
        double worst = 0.0;
        for (int t = 0; t < kTrials; ++t) {
            counter_rng rng(102, stream_role::node_vector, static_cast<std::uint64_t>(t) * 8 + d);
            auto a = random_hypervector(d, rng);
            auto b = random_hypervector(d, rng);
            auto c = random_hypervector(d, rng);
            worst = std::max(worst, max_abs_diff(bind(bind(a, b), c), bind(a, bind(b, c))));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("binding distributes over bundling to rounding error") {
    for (std::size_t d : kDims) {
        CAPTURE(d);
        double worst = 0.0;
        for (int t = 0; t < kTrials; ++t) {
            counter_rng rng(103, stream_role::node_vector, static_cast<std::uint64_t>(t) * 8 + d);
            auto a = random_hypervector(d, rng);
            auto b = random_hypervector(d, rng);
            auto c = random_hypervector(d, rng);
            auto lhs = bind(a, bundle(b, c));
            auto rhs = bundle(bind(a, b), bind(a, c));
            worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("inverse round trip recovers the bound operand") {
    for (std::size_t d : kDims) {
        CAPTURE(d);
        double worst_cs = 1.0;
        bool any_clamped = false;
        for (int t = 0; t < kTrials; ++t) {
            counter_rng rng(104, stream_role::node_vector, static_cast<std::uint64_t>(t) * 8 + d);
            auto a = random_hypervector(d, rng);
            auto b = random_hypervector(d, rng);
            bool clamped = false;
            auto ainv = inverse(a, 1e-8, &clamped);
            any_clamped = any_clamped || clamped;
            auto back = bind(ainv, bind(a, b));
            worst_cs = std::min(worst_cs, cosine(back, b));
        }
        CHECK(worst_cs > 1.0 - 1e-6);
        // Gaussian spectra at these dimensions sit far above the 1e-8 floor.
        CHECK_FALSE(any_clamped);
    }
}

TEST_CASE("double inverse returns the original vector") {
    for (std::size_t d : kDims) {
        CAPTURE(d);
        double worst_cs = 1.0;
        for (int t = 0; t < 20; ++t) {
            counter_rng rng(105, stream_role::node_vector, static_cast<std::uint64_t>(t) * 8 + d);
            auto a = random_hypervector(d, rng);
            worst_cs = std::min(worst_cs, cosine(inverse(inverse(a)), a));
        }
        CHECK(worst_cs > 1.0 - 1e-9);
    }
}

TEST_CASE("unitary projection yields unit norm and unit spectrum") {
    for (std::size_t d : kDims) {
        CAPTURE(d);
        counter_rng rng(106, stream_role::node_vector, d);
        auto a = make_unitary(random_hypervector(d, rng));
        CHECK(norm(a) == doctest::Approx(1.0).epsilon(1e-12));
        auto s = to_spectrum(a);
        for (const auto& bin : s.bins)
            CHECK(std::abs(bin) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("unitary inverse equals time reversal and has unit norm") {
    const std::size_t d = 512;
    counter_rng rng(107, stream_role::node_vector, 0);
    auto a = make_unitary(random_hypervector(d, rng));
    auto ainv = inverse(a);
    CHECK(norm(ainv) == doctest::Approx(1.0).epsilon(1e-10));
    // Reciprocal of a unit-magnitude spectrum is its conjugate, i.e. the
    // time-reversed vector a[(-k) mod d].
    for (std::size_t k = 0; k < d; ++k) {
        std::size_t rk = (d - k) % d;
        CHECK(ainv.v[k] == doctest::Approx(a.v[rk]).epsilon(1e-10));
    }
}

TEST_CASE("random draws have unit expected norm and near-zero cross terms") {
    const std::size_t d = 2048;
    const int n = 100;
    std::vector<HyperVector> vs;
    vs.reserve(n);
    for (int t = 0; t < n; ++t) {
        counter_rng rng(108, stream_role::node_vector, static_cast<std::uint64_t>(t));
        vs.push_back(random_hypervector(d, rng));
    }
    double mean_norm_sq = 0.0;
    for (const auto& v : vs) mean_norm_sq += dot(v, v);
    mean_norm_sq /= n;
    CHECK(mean_norm_sq == doctest::Approx(1.0).epsilon(0.05));

    // Cross-cosines concentrate around 0 with sd 1/sqrt(d) ~ 0.022.
    int big = 0;
    double mean_abs = 0.0;
    int pairs = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < std::min(i + 5, n); ++j) {
            double c = std::abs(cosine(vs[i], vs[j]));
            mean_abs += c;
            ++pairs;
            if (c > 0.1) ++big;
        }
    }
    mean_abs /= pairs;
    CHECK(mean_abs < 2.0 / std::sqrt(static_cast<double>(d)));
    CHECK(big <= 2);
}

TEST_CASE("bundle is elementwise addition") {
    HyperVector a{{1.0, -2.0, 3.0}};
    HyperVector b{{0.5, 0.25, -1.0}};
    auto c = bundle(a, b);
    CHECK(c.v[0] == 1.5);
    CHECK(c.v[1] == -1.75);
    CHECK(c.v[2] == 2.0);
}

TEST_SUITE_END();
