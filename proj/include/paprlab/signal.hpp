#pragma once

#include <complex>
#include <vector>

namespace paprlab {

using cplx = std::complex<double>;

enum class Domain { time, frequency };
enum class FftDirection { forward, inverse };

// Complex sample sequence with rate metadata. Lengths handed to fft() must be
// powers of two.
struct SignalBuffer {
    std::vector<cplx> samples;
    double sample_rate_hz = 0.0;
    Domain domain_tag = Domain::time;
};

// Real-valued sample sequence (passband signals are real by construction).
struct RealBuffer {
    std::vector<double> samples;
    double sample_rate_hz = 0.0;
};

// In-place iterative radix-2 transform. Forward computes the unnormalized sum
// sum_n x[n] e^{-j2pi nk/M}; inverse applies 1/M. Twiddle tables are cached
// per size and shared across threads after first use.
void fft_inplace(std::vector<cplx>& data, bool inverse);

// Buffer-level wrapper: validates the power-of-two length and flips domain_tag.
SignalBuffer fft(const SignalBuffer& buf, FftDirection direction);

double mean_power(const std::vector<cplx>& x);
double mean_power(const std::vector<double>& x);
double mean_power(const SignalBuffer& buf);
double mean_power(const RealBuffer& buf);

double rms(const std::vector<cplx>& x);
double rms(const std::vector<double>& x);
double rms(const SignalBuffer& buf);
double rms(const RealBuffer& buf);

} // namespace paprlab
