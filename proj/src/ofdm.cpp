#include "paprlab/ofdm.hpp"

#include <cmath>

#include "paprlab/errors.hpp"

namespace paprlab {

namespace {
bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

void OfdmParams::validate() const {
    if (!is_pow2(n_subcarriers) || !is_pow2(n_subcarriers * oversample))
        throw config_error("ofdm: N and N*L must be powers of two");
    if (oversample < 1) throw config_error("ofdm: oversampling factor must be >= 1");
    if (cp_len < 0) throw config_error("ofdm: cp length must be >= 0");
    if (cp_len > n_subcarriers) throw config_error("ofdm: cp length exceeds symbol length");
    if (!(bandwidth_hz > 0.0)) throw config_error("ofdm: bandwidth must be positive");
    if (sample_rate_hz != bandwidth_hz * oversample)
        throw config_error("ofdm: sample rate must equal bandwidth * oversample");
    if (!(carrier_hz > 0.0 && carrier_hz < sample_rate_hz / 2.0))
        throw config_error("ofdm: carrier must lie in (0, fs/2)");
}

std::vector<cplx> oversample_spectrum(const std::vector<cplx>& X, int L) {
    if (L < 1) throw config_error("oversample_spectrum: L must be >= 1");
    int N = static_cast<int>(X.size());
    int M = N * L;
    std::vector<cplx> out(M, cplx{});
    for (int k = 0; k <= N / 2; ++k) out[k] = X[k];
    for (int k = N / 2 + 1; k < N; ++k) out[M - (N - k)] = X[k];
    return out;
}

std::vector<cplx> extract_occupied(const std::vector<cplx>& Y, int N) {
    int M = static_cast<int>(Y.size());
    if (M % N != 0) throw config_error("extract_occupied: length not a multiple of N");
    std::vector<cplx> X(N);
    for (int k = 0; k <= N / 2; ++k) X[k] = Y[k];
    for (int k = N / 2 + 1; k < N; ++k) X[k] = Y[M - (N - k)];
    return X;
}

std::vector<cplx> ofdm_modulate(const std::vector<cplx>& X_padded, const OfdmParams& params) {
    int M = params.fft_len();
    if (static_cast<int>(X_padded.size()) != M)
        throw config_error("ofdm_modulate: expected N*L bins");
    std::vector<cplx> x = X_padded;
    fft_inplace(x, true);
    double scale = std::sqrt(static_cast<double>(M));
    for (auto& s : x) s *= scale;
    return x;
}

template <typename T>
std::vector<T> add_cyclic_prefix(const std::vector<T>& x, int cp_samples) {
    if (cp_samples < 0 || cp_samples > static_cast<int>(x.size()))
        throw config_error("add_cyclic_prefix: invalid guard length");
    std::vector<T> out;
    out.reserve(x.size() + cp_samples);
    out.insert(out.end(), x.end() - cp_samples, x.end());
    out.insert(out.end(), x.begin(), x.end());
    return out;
}

template <typename T>
std::vector<T> remove_cyclic_prefix(const std::vector<T>& x, int cp_samples) {
    if (cp_samples < 0 || cp_samples >= static_cast<int>(x.size()))
        throw config_error("remove_cyclic_prefix: invalid guard length");
    return std::vector<T>(x.begin() + cp_samples, x.end());
}

template std::vector<double> add_cyclic_prefix(const std::vector<double>&, int);
template std::vector<cplx> add_cyclic_prefix(const std::vector<cplx>&, int);
template std::vector<double> remove_cyclic_prefix(const std::vector<double>&, int);
template std::vector<cplx> remove_cyclic_prefix(const std::vector<cplx>&, int);

RealBuffer upconvert(const std::vector<cplx>& x, const OfdmParams& params) {
    if (!(params.carrier_hz < params.sample_rate_hz / 2.0 - params.bandwidth_hz / 2.0))
        throw config_error("upconvert: carrier too high, passband would fold over");
    RealBuffer out;
    out.sample_rate_hz = params.sample_rate_hz;
    out.samples.resize(x.size());
    double w = 2.0 * M_PI * params.carrier_hz / params.sample_rate_hz;
    double r2 = std::sqrt(2.0);
    for (size_t m = 0; m < x.size(); ++m) {
        cplx c = std::polar(1.0, w * static_cast<double>(m));
        out.samples[m] = r2 * (x[m] * c).real();
    }
    return out;
}

std::vector<cplx> downconvert(const RealBuffer& xp, const OfdmParams& params,
                              const DesignedFilter& lpf, int carrier_ref_sample) {
    if (lpf.spec.kind != FilterKind::lowpass)
        throw config_error("downconvert: a lowpass filter is required");
    double cutoff = lpf.spec.edges_hz[0];
    if (!(cutoff >= params.bandwidth_hz / 2.0 &&
          cutoff < 2.0 * params.carrier_hz - params.bandwidth_hz / 2.0))
        throw config_error("downconvert: lowpass cutoff must cover the band and reject the image");
    if (xp.sample_rate_hz != params.sample_rate_hz)
        throw config_error("downconvert: sample rate mismatch");

    std::vector<cplx> y(xp.samples.size());
    double w = 2.0 * M_PI * params.carrier_hz / params.sample_rate_hz;
    double r2 = std::sqrt(2.0);
    for (size_t m = 0; m < y.size(); ++m) {
        double ph = -w * (static_cast<double>(m) - static_cast<double>(carrier_ref_sample));
        y[m] = r2 * xp.samples[m] * std::polar(1.0, ph);
    }
    return apply_filter(y, lpf);
}

} // namespace paprlab
