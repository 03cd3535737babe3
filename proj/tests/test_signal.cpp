#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "paprlab/errors.hpp"
#include "paprlab/rng.hpp"
#include "paprlab/signal.hpp"

#include <cmath>
#include <complex>
#include <vector>

using paprlab::cplx;

namespace {

// O(M^2) direct evaluation of the transform definition, used as the oracle.
std::vector<cplx> naive_dft(const std::vector<cplx>& x, bool inverse) {
    size_t n = x.size();
    std::vector<cplx> out(n);
    double sign = inverse ? 1.0 : -1.0;
    for (size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (size_t m = 0; m < n; ++m) {
            double a = sign * 2.0 * M_PI * static_cast<double>(k * m) / static_cast<double>(n);
            acc += x[m] * cplx(std::cos(a), std::sin(a));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

std::vector<cplx> random_vector(size_t n, paprlab::StreamRng& rng) {
    std::vector<cplx> x(n);
    for (auto& v : x) v = cplx(rng.gaussian(), rng.gaussian());
    return x;
}

double rel_error(const std::vector<cplx>& got, const std::vector<cplx>& want) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < got.size(); ++i) {
        num += std::norm(got[i] - want[i]);
        den += std::norm(want[i]);
    }
    return std::sqrt(num / (den > 0.0 ? den : 1.0));
}

} // namespace

TEST_CASE("transform matches the direct definition on random vectors") {
    paprlab::StreamRng rng(424242, 0);
    const size_t sizes[] = {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    int checked = 0;
    for (int rep = 0; rep < 100; ++rep) {
        for (size_t n : sizes) {
            auto x = random_vector(n, rng);
            auto want = naive_dft(x, false);
            auto got = x;
            paprlab::fft_inplace(got, false);
            REQUIRE(rel_error(got, want) < 1e-10);

            auto want_inv = naive_dft(x, true);
            auto got_inv = x;
            paprlab::fft_inplace(got_inv, true);
            REQUIRE(rel_error(got_inv, want_inv) < 1e-10);
            ++checked;
        }
    }
    CHECK(checked == 1000);
}

TEST_CASE("impulse transforms to a flat spectrum") {
    std::vector<cplx> x(64, 0.0);
    x[0] = 1.0;
    paprlab::fft_inplace(x, false);
    for (const auto& v : x) {
        CHECK(std::abs(v - cplx(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("constant input transforms to a single DC bin") {
    std::vector<cplx> x(64, cplx(2.0, -1.0));
    paprlab::fft_inplace(x, false);
    CHECK(std::abs(x[0] - cplx(128.0, -64.0)) < 1e-10);
    for (size_t k = 1; k < x.size(); ++k) CHECK(std::abs(x[k]) < 1e-10);
}

TEST_CASE("single tone lands on its bin") {
    size_t n = 256, bin = 37;
    std::vector<cplx> x(n);
    for (size_t m = 0; m < n; ++m) {
        double a = 2.0 * M_PI * static_cast<double>(bin * m) / static_cast<double>(n);
        x[m] = cplx(std::cos(a), std::sin(a));
    }
    paprlab::fft_inplace(x, false);
    CHECK(std::abs(x[bin] - cplx(256.0, 0.0)) < 1e-9);
    for (size_t k = 0; k < n; ++k) {
        if (k != bin) CHECK(std::abs(x[k]) < 1e-9);
    }
}

TEST_CASE("energy is preserved up to the transform normalization") {
    paprlab::StreamRng rng(7, 1);
    for (size_t n : {8u, 128u, 1024u}) {
        auto x = random_vector(n, rng);
        double e_time = 0.0;
        for (const auto& v : x) e_time += std::norm(v);
        auto X = x;
        paprlab::fft_inplace(X, false);
        double e_freq = 0.0;
        for (const auto& v : X) e_freq += std::norm(v);
        CHECK(std::abs(e_freq - static_cast<double>(n) * e_time) / (static_cast<double>(n) * e_time) < 1e-10);
    }
}

TEST_CASE("transform is linear") {
    paprlab::StreamRng rng(7, 2);
    auto x = random_vector(128, rng);
    auto y = random_vector(128, rng);
    cplx a(1.7, -0.3), b(-0.9, 2.1);

    std::vector<cplx> z(128);
    for (size_t i = 0; i < 128; ++i) z[i] = a * x[i] + b * y[i];

    paprlab::fft_inplace(x, false);
    paprlab::fft_inplace(y, false);
    paprlab::fft_inplace(z, false);
    for (size_t i = 0; i < 128; ++i) {
        CHECK(std::abs(z[i] - (a * x[i] + b * y[i])) < 1e-9);
    }
}

TEST_CASE("forward then inverse returns the input") {
    paprlab::StreamRng rng(7, 3);
    for (size_t n : {2u, 64u, 1024u, 4096u}) {
        auto x = random_vector(n, rng);
        auto y = x;
        paprlab::fft_inplace(y, false);
        paprlab::fft_inplace(y, true);
        CHECK(rel_error(y, x) < 1e-12);
    }
}

TEST_CASE("non power of two lengths are rejected") {
    std::vector<cplx> x(12, 1.0);
    CHECK_THROWS_AS(paprlab::fft_inplace(x, false), paprlab::config_error);
    std::vector<cplx> empty;
    CHECK_THROWS_AS(paprlab::fft_inplace(empty, false), paprlab::config_error);
}

TEST_CASE("buffer wrapper flips the domain tag") {
    paprlab::SignalBuffer buf;
    buf.samples.assign(16, cplx(1.0, 0.0));
    buf.sample_rate_hz = 8e6;
    buf.domain_tag = paprlab::Domain::time;

    auto spec = paprlab::fft(buf, paprlab::FftDirection::forward);
    CHECK(spec.domain_tag == paprlab::Domain::frequency);
    CHECK(spec.sample_rate_hz == 8e6);

    auto back = paprlab::fft(spec, paprlab::FftDirection::inverse);
    CHECK(back.domain_tag == paprlab::Domain::time);
    CHECK(rel_error(back.samples, buf.samples) < 1e-12);
}

TEST_CASE("mean power and rms agree with hand values") {
    std::vector<double> r = {3.0, -4.0};
    CHECK(paprlab::mean_power(r) == doctest::Approx(12.5));
    CHECK(paprlab::rms(r) == doctest::Approx(std::sqrt(12.5)));

    std::vector<cplx> c = {cplx(3.0, 4.0)};
    CHECK(paprlab::mean_power(c) == doctest::Approx(25.0));
    CHECK(paprlab::rms(c) == doctest::Approx(5.0));

    std::vector<double> empty;
    CHECK_THROWS_AS(paprlab::mean_power(empty), paprlab::config_error);
}
