#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace paprlab {

// Decorrelates (master_seed, stream_index) pairs before they seed the engine.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One independent random stream, fully determined by (master_seed, stream_index).
// Streams can be handed to different workers; results never depend on which
// worker consumed which stream. Gaussian variates use an explicit Box-Muller
// so that output is identical across standard library implementations.
class StreamRng {
public:
    StreamRng(uint64_t master_seed, uint64_t stream_index)
        : engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(stream_index ^ 0xa5a5a5a5a5a5a5a5ULL))) {}

    uint64_t next_u64() { return engine_(); }

    int next_bit() {
        if (bit_count_ == 0) {
            bit_word_ = next_u64();
            bit_count_ = 64;
        }
        int b = static_cast<int>(bit_word_ & 1u);
        bit_word_ >>= 1;
        --bit_count_;
        return b;
    }

    // Uniform on (0, 1); never returns exactly 0, safe under log().
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal variate, mean 0, variance 1.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    uint64_t bit_word_ = 0;
    int bit_count_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace paprlab
