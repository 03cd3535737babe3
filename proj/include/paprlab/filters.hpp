#pragma once

#include <string>
#include <vector>

#include "paprlab/signal.hpp"

namespace paprlab {

enum class FilterFamily { fir_window, iir_cheby1 };
enum class FilterKind { lowpass, highpass, bandpass };

struct FilterSpec {
    FilterFamily family = FilterFamily::fir_window;
    FilterKind kind = FilterKind::lowpass;
    std::vector<double> edges_hz;       // 1 edge (lowpass/highpass) or 2 (bandpass)
    int order = 0;                      // FIR: tap count - 1. IIR: analog prototype order.
    double passband_ripple_db = 0.0;    // IIR only
    double sample_rate_hz = 0.0;
};

// One second-order section, transfer (b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2).
struct Biquad {
    double b0 = 0, b1 = 0, b2 = 0, a1 = 0, a2 = 0;
};

struct DesignedFilter {
    FilterSpec spec;
    std::vector<double> fir_taps;   // fir_window realization
    std::vector<Biquad> sections;   // iir_cheby1 realization, overall gain folded into sections[0]
};

// Windowed-sinc design, Hamming window. Lowpass is normalized to exact unit DC
// gain; highpass is built by spectral inversion (odd tap count required, taps
// sum to zero); bandpass is the difference of two lowpass prototypes. Taps are
// computed half-and-mirrored so symmetry is exact in floating point.
DesignedFilter design_fir(const FilterSpec& spec);

// Chebyshev Type I: analog prototype poles, lowpass->bandpass transform where
// requested, bilinear transform with edge prewarping, factored into stable
// biquads. Passband edge magnitude equals -ripple dB by construction; overall
// gain is normalized at DC (lowpass) or the geometric band center (bandpass),
// to 0 dB for odd prototype order and -ripple dB for even order.
DesignedFilter design_cheby1(const FilterSpec& spec);

// FIR path: direct convolution, same-length output, zero-padded edges, group
// delay removed by the order/2 shift. IIR path: cascaded direct-form-II
// transposed biquads from zero initial state (causal, delay left in place).
std::vector<double> apply_filter(const std::vector<double>& x, const DesignedFilter& f);
std::vector<cplx> apply_filter(const std::vector<cplx>& x, const DesignedFilter& f);
RealBuffer apply_filter(const RealBuffer& x, const DesignedFilter& f);
SignalBuffer apply_filter(const SignalBuffer& x, const DesignedFilter& f);

// Exact H(e^{j 2 pi f / fs}) from taps or biquad products.
std::vector<cplx> frequency_response(const DesignedFilter& f, const std::vector<double>& freqs_hz);
cplx frequency_response_at(const DesignedFilter& f, double freq_hz);

std::string describe(const FilterSpec& spec);

} // namespace paprlab
