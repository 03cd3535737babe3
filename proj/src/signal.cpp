#include "paprlab/signal.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

#include "paprlab/errors.hpp"

namespace paprlab {

namespace {

bool is_pow2(size_t n) { return n > 0 && (n & (n - 1)) == 0; }

struct FftTables {
    std::vector<size_t> bit_reversal;
    std::vector<cplx> twiddles; // e^{-j2pi k/M}, k in [0, M/2)
};

// Read-mostly cache: concurrent transforms share tables after first use.
const FftTables& tables_for(size_t n) {
    static std::shared_mutex mu;
    static std::map<size_t, std::unique_ptr<FftTables>> cache;
    {
        std::shared_lock lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return *it->second;
    }
    std::unique_lock lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;

    auto t = std::make_unique<FftTables>();
    t->bit_reversal.resize(n);
    int bits = 0;
    while ((size_t{1} << bits) < n) ++bits;
    for (size_t i = 0; i < n; ++i) {
        size_t r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (size_t{1} << b)) r |= size_t{1} << (bits - 1 - b);
        t->bit_reversal[i] = r;
    }
    t->twiddles.resize(n / 2);
    for (size_t k = 0; k < n / 2; ++k) {
        double a = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        t->twiddles[k] = cplx(std::cos(a), std::sin(a));
    }
    const FftTables& ref = *t;
    cache.emplace(n, std::move(t));
    return ref;
}

} // namespace

void fft_inplace(std::vector<cplx>& data, bool inverse) {
    size_t n = data.size();
    if (!is_pow2(n))
        throw config_error("fft: length " + std::to_string(n) + " is not a power of two");
    if (n == 1) return;

    const FftTables& t = tables_for(n);
    for (size_t i = 0; i < n; ++i) {
        size_t j = t.bit_reversal[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        size_t half = len >> 1;
        size_t step = n / len;
        for (size_t start = 0; start < n; start += len) {
            for (size_t k = 0; k < half; ++k) {
                cplx w = t.twiddles[k * step];
                if (inverse) w = std::conj(w);
                cplx u = data[start + k];
                cplx v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
    if (inverse) {
        double scale = 1.0 / static_cast<double>(n);
        for (auto& s : data) s *= scale;
    }
}

SignalBuffer fft(const SignalBuffer& buf, FftDirection direction) {
    SignalBuffer out = buf;
    fft_inplace(out.samples, direction == FftDirection::inverse);
    out.domain_tag = (buf.domain_tag == Domain::time) ? Domain::frequency : Domain::time;
    return out;
}

double mean_power(const std::vector<cplx>& x) {
    if (x.empty()) throw config_error("mean_power: empty buffer");
    double acc = 0.0;
    for (const auto& s : x) acc += std::norm(s);
    return acc / static_cast<double>(x.size());
}

double mean_power(const std::vector<double>& x) {
    if (x.empty()) throw config_error("mean_power: empty buffer");
    double acc = 0.0;
    for (double s : x) acc += s * s;
    return acc / static_cast<double>(x.size());
}

double mean_power(const SignalBuffer& buf) { return mean_power(buf.samples); }
double mean_power(const RealBuffer& buf) { return mean_power(buf.samples); }

double rms(const std::vector<cplx>& x) { return std::sqrt(mean_power(x)); }
double rms(const std::vector<double>& x) { return std::sqrt(mean_power(x)); }
double rms(const SignalBuffer& buf) { return std::sqrt(mean_power(buf)); }
double rms(const RealBuffer& buf) { return std::sqrt(mean_power(buf)); }

} // namespace paprlab
