#pragma once

#include <vector>

#include "paprlab/filters.hpp"
#include "paprlab/signal.hpp"

namespace paprlab {

struct OfdmParams {
    int n_subcarriers = 128;     // N
    int oversample = 8;          // L
    int cp_len = 32;             // guard length in pre-oversampling units
    double bandwidth_hz = 1e6;   // BW
    double carrier_hz = 2e6;     // f_c
    double sample_rate_hz = 8e6; // f_s = BW * L

    int fft_len() const { return n_subcarriers * oversample; }
    int cp_samples() const { return cp_len * oversample; }

    // Throws config_error on violated invariants (powers of two, rate identity,
    // carrier placement, guard length).
    void validate() const;
};

// Zero-padded oversampling: out[k] = X[k] for 0 <= k <= N/2,
// out[N*L - (N - k)] = X[k] for N/2 < k < N, zero elsewhere.
std::vector<cplx> oversample_spectrum(const std::vector<cplx>& X, int L);

// Inverse of oversample_spectrum: gathers the N occupied bins back out of an
// N*L-point spectrum.
std::vector<cplx> extract_occupied(const std::vector<cplx>& Y, int N);

// x'[m] = (1/sqrt(L*N)) sum_k X[k] e^{j 2 pi m k / (L N)}, i.e. the inverse FFT
// scaled by sqrt(L*N). Mean output power is (1/L) * E|X_k|^2.
std::vector<cplx> ofdm_modulate(const std::vector<cplx>& X_padded, const OfdmParams& params);

template <typename T>
std::vector<T> add_cyclic_prefix(const std::vector<T>& x, int cp_samples);
template <typename T>
std::vector<T> remove_cyclic_prefix(const std::vector<T>& x, int cp_samples);

// x^p[m] = sqrt(2) Re{ x[m] e^{j 2 pi f_c m / f_s} }; power preserving.
RealBuffer upconvert(const std::vector<cplx>& x, const OfdmParams& params);

// Multiply by sqrt(2) e^{-j 2 pi f_c (m - carrier_ref_sample) / f_s} and lowpass
// away the 2 f_c image. carrier_ref_sample anchors the carrier phase, letting a
// receiver that strips a cyclic prefix keep the symbol-start phase reference.
std::vector<cplx> downconvert(const RealBuffer& xp, const OfdmParams& params,
                              const DesignedFilter& lpf, int carrier_ref_sample = 0);

} // namespace paprlab
