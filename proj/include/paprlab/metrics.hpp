#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paprlab/modem.hpp"
#include "paprlab/rng.hpp"
#include "paprlab/signal.hpp"

namespace paprlab {

// 10 log10( peak instantaneous power / mean power ).
double papr_db(const std::vector<double>& x);
double papr_db(const std::vector<cplx>& x);

struct CcdfCurve {
    std::vector<double> thresholds_db;
    std::vector<double> probabilities; // P(PAPR > threshold), nonincreasing
    size_t sample_count = 0;
};

CcdfCurve ccdf(const std::vector<double>& papr_samples_db, const std::vector<double>& thresholds_db);

// Inverse query: the PAPR (dB) at which the curve crosses probability p,
// linearly interpolated between bracketing thresholds.
double papr_at_ccdf(const CcdfCurve& curve, double p);

// Adds white Gaussian noise calibrated to the requested E_b/N_0 against the
// measured signal power. samples_per_bit_factor is the number of signal
// samples per constellation sample (the oversampling factor L); together with
// bits_per_symbol and code_rate it fixes the energy per bit
// E_b = P * L / (bits_per_symbol * code_rate). Real signals get variance
// sigma^2 = E_b / (2 * 10^{ebn0/10}) per sample; complex signals get half that
// per dimension.
void awgn(std::vector<double>& x, double ebn0_db, int bits_per_symbol,
          double samples_per_bit_factor, StreamRng& rng, double code_rate = 1.0);
void awgn(std::vector<cplx>& x, double ebn0_db, int bits_per_symbol,
          double samples_per_bit_factor, StreamRng& rng, double code_rate = 1.0);

// Hamming distance between equal-length streams.
uint64_t ber_count(const BitStream& tx, const BitStream& rx);

// Uncoded AWGN reference: qpsk Q(sqrt(2 g)), qam16 (3/4) Q(sqrt(4 g / 5)).
double analytical_ber(const std::string& scheme, double ebn0_db);

struct BerPoint {
    double snr_db = 0.0;
    uint64_t bit_errors = 0;
    uint64_t bits_total = 0;
    double ber = 0.0;
    bool confident = false; // enough errors observed for the estimate to be trusted
};

} // namespace paprlab
