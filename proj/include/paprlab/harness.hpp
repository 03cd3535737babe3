#pragma once

#include <map>
#include <string>
#include <vector>

#include "paprlab/config.hpp"
#include "paprlab/metrics.hpp"

namespace paprlab {

// Per-symbol PAPR of the full pipeline at every (variant, clipping ratio),
// plus the unclipped reference. filtered[variant_idx][cr_idx][symbol_idx].
struct PaprSampleSet {
    std::vector<double> unclipped;
    std::vector<std::vector<std::vector<double>>> filtered;
};

// Serial reference implementation and the parallel production path compute
// identical sample sets: symbols are partitioned by index and every stream is
// seeded from the symbol index, so scheduling cannot influence any value.
PaprSampleSet collect_papr_samples_serial(const ExperimentConfig& cfg);
PaprSampleSet collect_papr_samples_parallel(const ExperimentConfig& cfg, int workers);

struct CcdfExperimentResult {
    struct Curve {
        std::string variant; // "none" for the unclipped reference
        double cr;           // 0 for the unclipped reference
        CcdfCurve curve;
    };
    std::vector<Curve> curves;

    struct SummaryRow {
        double cr = 0.0;
        double papr_previous_db = 0.0;
        double papr_proposed_db = 0.0;
        double improvement_db = 0.0; // previous - proposed
    };
    std::vector<SummaryRow> summary; // filled when both variants were run
    double unclipped_papr_db = 0.0;  // at the reporting point CCDF = 0.1
};

/// workers: 1 = serial reference path, 0 = all available, n = that many.
CcdfExperimentResult run_ccdf_experiment(const ExperimentConfig& cfg, int workers);

struct BerExperimentResult {
    struct Row {
        std::string variant; // "analytic", "none", "previous", "proposed"
        double cr;           // 0 for analytic/none
        BerPoint point;
    };
    std::vector<Row> rows;

    struct SummaryRow {
        double cr = 0.0;
        double ber_previous = 0.0;
        double ber_proposed = 0.0;
        double difference = 0.0; // previous - proposed
    };
    std::vector<SummaryRow> summary; // at cfg.summary_snr_db, when present in the grid
};

BerExperimentResult run_ber_experiment(const ExperimentConfig& cfg, int workers);

// Measured BER for one (variant, cr, snr) point; exposed for targeted runs.
BerPoint run_ber_point(const ExperimentConfig& cfg, const MethodVariant& variant, double cr,
                       double ebn0_db, int workers);

// CSV + manifest emission. Returns the map of written file names to the FNV-1a
// digests recorded in the manifest.
std::map<std::string, std::string> write_ccdf_outputs(const CcdfExperimentResult& result,
                                                      const ExperimentConfig& cfg,
                                                      const std::string& out_dir,
                                                      double wall_ms);
std::map<std::string, std::string> write_ber_outputs(const BerExperimentResult& result,
                                                     const ExperimentConfig& cfg,
                                                     const std::string& out_dir,
                                                     double wall_ms);
void write_filter_dump(const DesignedFilter& f, const std::string& path);

} // namespace paprlab
