#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paprlab/ofdm.hpp"
#include "paprlab/papr.hpp"

namespace paprlab {

// Flat experiment configuration. File format is one dotted key per line,
// `key = value`, '#' comments; the same keys can be forced from the command
// line. Unknown keys are rejected.
struct ExperimentConfig {
    OfdmParams ofdm;

    std::string scheme = "qpsk";
    std::vector<std::string> variants = {"previous", "proposed"};
    std::vector<double> cr_list = {0.8, 1.0, 1.2, 1.4, 1.6};
    std::vector<double> snr_grid_db = {0, 2, 4, 6, 8, 10};

    uint64_t n_symbols_ccdf = 100000;
    uint64_t bit_budget_ber = 2000000;
    uint64_t min_errors_ber = 100;
    uint64_t ber_batch_symbols = 64;
    double summary_snr_db = 6.0;
    uint64_t master_seed = 12345;
    SigmaEstimate sigma_estimate = SigmaEstimate::per_symbol;

    double ccdf_threshold_min_db = 0.0;
    double ccdf_threshold_max_db = 16.0;
    double ccdf_threshold_step_db = 0.02;

    int prev_kernel_order = 64;
    double prev_kernel_cutoff_hz = 1.5e6;
    int prop_kernel_order = 1;
    double prop_kernel_ripple_db = 3.0;
    double prop_kernel_band_low_hz = 1.5e6;
    double prop_kernel_band_high_hz = 2.5e6;
    int lpf_order = 64;
    double lpf_cutoff_hz = 1.0e6;
};

// Parses config_path (empty string = defaults), then applies `key=value`
// override strings in order. Throws config_error on unknown keys, malformed
// values or failed validation.
ExperimentConfig load_config(const std::string& config_path,
                             const std::vector<std::string>& overrides);

void validate_config(const ExperimentConfig& cfg);

// Canonical key=value dump of every setting, for the run manifest.
std::string dump_config(const ExperimentConfig& cfg);

// Realized filters for this configuration.
DesignedFilter build_previous_kernel(const ExperimentConfig& cfg);
DesignedFilter build_proposed_kernel(const ExperimentConfig& cfg);
DesignedFilter build_receiver_lpf(const ExperimentConfig& cfg);
MethodVariant build_variant(const std::string& name, const ExperimentConfig& cfg);

} // namespace paprlab
