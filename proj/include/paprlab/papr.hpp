#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paprlab/filters.hpp"
#include "paprlab/ofdm.hpp"
#include "paprlab/signal.hpp"

namespace paprlab {

enum class ClipDomain { baseband_polar, passband_hard };
enum class SigmaEstimate { per_symbol, global };

struct ClipConfig {
    double cr = 1.0;
    ClipDomain domain = ClipDomain::passband_hard;
    SigmaEstimate sigma_estimate = SigmaEstimate::per_symbol;
    double global_sigma = 0.0; // required when sigma_estimate == global
};

// One reduction scheme: a clipping stage followed by the composed filter built
// around this kernel. bin_gain holds the kernel's frequency response sampled at
// the FFT bin frequencies, with the kernel's bulk delay removed: the FIR kernel
// is advanced by its exact order/2 linear phase, the IIR kernel by its group
// delay and absolute phase at the carrier. A receiver is assumed synchronized
// to the known transmit chain, so only the kernel's in-band shaping and its
// residual (nonlinear) phase distortion stay in the signal path.
struct MethodVariant {
    std::string name; // "previous", "proposed" or "none"
    DesignedFilter kernel;
    std::vector<cplx> bin_gain;     // length N*L, conjugate symmetric
    std::vector<uint8_t> occupied;  // length N*L, 1 on the signal band and its image
};

// Builds the per-bin tables. The carrier must land exactly on an FFT bin
// (f_c * N * L / f_s integral), otherwise the occupied set is not well defined.
MethodVariant make_variant(const std::string& name, const OfdmParams& params,
                           const DesignedFilter& kernel);
MethodVariant make_null_variant();

// A = cr * sigma.
double clipping_level(double cr, double sigma);

// Polar clip: magnitude limited to A, phase kept.
std::vector<cplx> clip_baseband(const std::vector<cplx>& x, double A);

// Hard amplitude clip of a real signal to [-A, A].
std::vector<double> clip_passband(const std::vector<double>& x, double A);

// FFT, multiply the occupied bins by the compensated kernel response, force
// every bin outside the occupied set to exactly zero, inverse FFT. The output
// of a real input is real; residual imaginary parts beyond 1e-9 raise
// numerical_error. Variant "none" is the identity.
std::vector<double> composed_filter(const std::vector<double>& xc, const MethodVariant& variant,
                                    const OfdmParams& params);

// Same, starting from the forward FFT of the clipped signal; lets callers that
// evaluate several variants share one transform.
std::vector<double> composed_filter_spectrum(const std::vector<cplx>& Xc,
                                             const MethodVariant& variant,
                                             const OfdmParams& params);

struct PaprTelemetry {
    double papr_pre_db = 0.0;
    double papr_clip_db = 0.0;
    double papr_filt_db = 0.0;
};

// Full reduction stage on one upconverted symbol: measure sigma, clip at
// A = cr * sigma, run the composed filter, record PAPR at the three taps.
std::vector<double> reduce_papr(const std::vector<double>& passband, const ClipConfig& clip,
                                const MethodVariant& variant, const OfdmParams& params,
                                PaprTelemetry* telemetry = nullptr);

} // namespace paprlab
