#include "paprlab/papr.hpp"

#include <cmath>

#include "paprlab/errors.hpp"
#include "paprlab/metrics.hpp"

namespace paprlab {

namespace {

// Group delay in samples at freq_hz, from the numerical phase slope.
double group_delay_samples(const DesignedFilter& f, double freq_hz) {
    double delta = 1e3;
    cplx h1 = frequency_response_at(f, freq_hz - delta);
    cplx h2 = frequency_response_at(f, freq_hz + delta);
    double dphi = std::remainder(std::arg(h2) - std::arg(h1), 2.0 * M_PI);
    double tau_s = -dphi / (2.0 * M_PI * 2.0 * delta);
    return tau_s * f.spec.sample_rate_hz;
}

} // namespace

MethodVariant make_variant(const std::string& name, const OfdmParams& params,
                           const DesignedFilter& kernel) {
    if (name == "none") return make_null_variant();
    if (name != "previous" && name != "proposed")
        throw config_error("unknown method variant: " + name);

    MethodVariant v;
    v.name = name;
    v.kernel = kernel;

    int N = params.n_subcarriers;
    int M = params.fft_len();
    double fs = params.sample_rate_hz;

    double kbin_f = params.carrier_hz * M / fs;
    int kbin = static_cast<int>(std::lround(kbin_f));
    if (std::abs(kbin_f - kbin) > 1e-9)
        throw config_error("composed filter: carrier frequency must land on an FFT bin");

    v.occupied.assign(M, 0);
    for (int off = -(N / 2 - 1); off <= N / 2; ++off) {
        int bin = kbin + off;
        if (bin <= 0 || bin >= M / 2)
            throw config_error("composed filter: signal band does not fit between DC and Nyquist");
        v.occupied[bin] = 1;
        v.occupied[M - bin] = 1;
    }

    // compensated kernel response at the positive-frequency bins
    double tau, phi0;
    if (!kernel.fir_taps.empty()) {
        tau = kernel.spec.order / 2.0; // exact linear phase of the symmetric FIR
        phi0 = 0.0;
    } else {
        tau = group_delay_samples(kernel, params.carrier_hz);
        double wc = 2.0 * M_PI * params.carrier_hz / fs;
        phi0 = std::arg(frequency_response_at(kernel, params.carrier_hz) *
                        std::polar(1.0, wc * tau));
    }

    v.bin_gain.assign(M, cplx{});
    for (int bin = 1; bin < M / 2; ++bin) {
        if (!v.occupied[bin]) continue;
        double f = bin * fs / M;
        double w = 2.0 * M_PI * f / fs;
        cplx g = frequency_response_at(kernel, f) * std::polar(1.0, w * tau - phi0);
        v.bin_gain[bin] = g;
        v.bin_gain[M - bin] = std::conj(g);
    }
    return v;
}

MethodVariant make_null_variant() {
    MethodVariant v;
    v.name = "none";
    return v;
}

double clipping_level(double cr, double sigma) {
    if (!(cr > 0.0) || !(sigma > 0.0))
        throw config_error("clipping_level: cr and sigma must be positive");
    return cr * sigma;
}

std::vector<cplx> clip_baseband(const std::vector<cplx>& x, double A) {
    if (!(A > 0.0)) throw config_error("clip_baseband: clip level must be positive");
    std::vector<cplx> out = x;
    for (auto& s : out) {
        double m = std::abs(s);
        if (m > A) s *= A / m;
    }
    return out;
}

std::vector<double> clip_passband(const std::vector<double>& x, double A) {
    if (!(A > 0.0)) throw config_error("clip_passband: clip level must be positive");
    std::vector<double> out = x;
    for (double& s : out) {
        if (s >= A) s = A;
        else if (s <= -A) s = -A;
    }
    return out;
}

std::vector<double> composed_filter(const std::vector<double>& xc, const MethodVariant& variant,
                                    const OfdmParams& params) {
    if (variant.name == "none") return xc;
    std::vector<cplx> X(xc.begin(), xc.end());
    fft_inplace(X, false);
    return composed_filter_spectrum(X, variant, params);
}

std::vector<double> composed_filter_spectrum(const std::vector<cplx>& Xc,
                                             const MethodVariant& variant,
                                             const OfdmParams& params) {
    int M = params.fft_len();
    if (static_cast<int>(Xc.size()) != M)
        throw config_error("composed_filter: expected N*L samples");
    if (variant.name == "none")
        throw config_error("composed_filter_spectrum: null variant has no spectrum path");

    std::vector<cplx> Y(M);
    for (int bin = 0; bin < M; ++bin)
        Y[bin] = variant.occupied[bin] ? Xc[bin] * variant.bin_gain[bin] : cplx{};
    fft_inplace(Y, true);

    std::vector<double> out(M);
    double worst = 0.0;
    double scale = 0.0;
    for (int m = 0; m < M; ++m) {
        out[m] = Y[m].real();
        worst = std::max(worst, std::abs(Y[m].imag()));
        scale = std::max(scale, std::abs(Y[m].real()));
    }
    if (worst > 1e-9 * std::max(1.0, scale))
        throw numerical_error("composed filter output is not real, conjugate symmetry broken");
    return out;
}

std::vector<double> reduce_papr(const std::vector<double>& passband, const ClipConfig& clip,
                                const MethodVariant& variant, const OfdmParams& params,
                                PaprTelemetry* telemetry) {
    double sigma;
    if (clip.sigma_estimate == SigmaEstimate::per_symbol) {
        sigma = rms(passband);
    } else {
        if (!(clip.global_sigma > 0.0))
            throw config_error("reduce_papr: global sigma estimate not provided");
        sigma = clip.global_sigma;
    }
    double A = clipping_level(clip.cr, sigma);
    std::vector<double> clipped = clip_passband(passband, A);
    std::vector<double> filtered = composed_filter(clipped, variant, params);
    if (telemetry) {
        telemetry->papr_pre_db = papr_db(passband);
        telemetry->papr_clip_db = papr_db(clipped);
        telemetry->papr_filt_db = papr_db(filtered);
    }
    return filtered;
}

} // namespace paprlab
