#include "paprlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "paprlab/errors.hpp"
#include "paprlab/ofdm.hpp"
#include "paprlab/papr.hpp"

namespace paprlab {

namespace {

// Noise streams live far above the per-symbol bit streams so the two index
// spaces can never collide.
constexpr uint64_t kNoiseStreamBase = uint64_t{1} << 32;
constexpr uint64_t kNoiseStreamsPerSnr = uint64_t{1} << 24;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

struct Pipeline {
    ExperimentConfig cfg;
    ConstellationScheme scheme;
    std::vector<MethodVariant> variants; // cfg.variants order
    MethodVariant null_variant;
    DesignedFilter lpf;
    double global_sigma = 0.0;

    explicit Pipeline(const ExperimentConfig& c)
        : cfg(c), scheme(make_scheme(c.scheme)), null_variant(make_null_variant()),
          lpf(build_receiver_lpf(c)) {
        for (const auto& name : c.variants) variants.push_back(build_variant(name, c));
        if (c.sigma_estimate == SigmaEstimate::global) global_sigma = estimate_global_sigma();
    }

    size_t bits_per_ofdm_symbol() const {
        return static_cast<size_t>(cfg.ofdm.n_subcarriers) * scheme.bits_per_symbol;
    }

    // Unclipped passband symbol for stream index i.
    std::vector<double> synthesize(uint64_t i, BitStream* bits_out = nullptr) const {
        BitStream bits = generate_bits(bits_per_ofdm_symbol(), cfg.master_seed, i);
        std::vector<cplx> X = map_bits(bits, scheme);
        std::vector<cplx> Xp = oversample_spectrum(X, cfg.ofdm.oversample);
        std::vector<cplx> x = ofdm_modulate(Xp, cfg.ofdm);
        RealBuffer xp = upconvert(x, cfg.ofdm);
        if (bits_out) *bits_out = std::move(bits);
        return std::move(xp.samples);
    }

    // RMS of the unclipped passband over a fixed prelude of symbols; used when
    // sigma_estimate = global.
    double estimate_global_sigma() const {
        const uint64_t n = 256;
        double acc = 0.0;
        uint64_t count = 0;
        for (uint64_t i = 0; i < n; ++i) {
            std::vector<double> xp = synthesize(i);
            for (double s : xp) acc += s * s;
            count += xp.size();
        }
        return std::sqrt(acc / static_cast<double>(count));
    }

    ClipConfig clip_for(double cr) const {
        ClipConfig c;
        c.cr = cr;
        c.sigma_estimate = cfg.sigma_estimate;
        c.global_sigma = global_sigma;
        return c;
    }
};

// ccdf inner loop for one symbol: writes into preallocated slots, so the same
// function serves the serial and the parallel path.
void ccdf_symbol_work(const Pipeline& pipe, uint64_t i, PaprSampleSet& out) {
    const ExperimentConfig& cfg = pipe.cfg;
    std::vector<double> xp = pipe.synthesize(i);
    out.unclipped[i] = papr_db(xp);
    for (size_t c = 0; c < cfg.cr_list.size(); ++c) {
        double sigma = (cfg.sigma_estimate == SigmaEstimate::per_symbol) ? rms(xp)
                                                                         : pipe.global_sigma;
        double A = clipping_level(cfg.cr_list[c], sigma);
        std::vector<double> xc = clip_passband(xp, A);
        std::vector<cplx> Xc(xc.begin(), xc.end());
        fft_inplace(Xc, false); // one transform shared by every variant
        for (size_t v = 0; v < pipe.variants.size(); ++v) {
            std::vector<double> y = composed_filter_spectrum(Xc, pipe.variants[v], cfg.ofdm);
            out.filtered[v][c][i] = papr_db(y);
        }
    }
}

PaprSampleSet alloc_samples(const ExperimentConfig& cfg) {
    PaprSampleSet s;
    s.unclipped.resize(cfg.n_symbols_ccdf);
    s.filtered.assign(cfg.variants.size(),
                      std::vector<std::vector<double>>(
                          cfg.cr_list.size(), std::vector<double>(cfg.n_symbols_ccdf)));
    return s;
}

int resolve_workers(int workers) {
#ifdef _OPENMP
    if (workers <= 0) return omp_get_max_threads();
    return workers;
#else
    (void)workers;
    return 1;
#endif
}

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_hex(const std::string& data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return std::string(buf);
}

std::string coefficients_text(const DesignedFilter& f) {
    std::ostringstream os;
    char buf[160];
    for (double t : f.fir_taps) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", t);
        os << buf;
    }
    for (const auto& s : f.sections) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.b0, s.b1, s.b2,
                      s.a1, s.a2);
        os << buf;
    }
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot write " + path);
    out << content;
    if (!out) throw config_error("failed writing " + path);
}

void write_manifest(const ExperimentConfig& cfg, const std::string& command,
                    const std::map<std::string, std::string>& output_digests,
                    const std::string& out_dir, double wall_ms) {
    std::ostringstream os;
    os << "command = " << command << "\n";
    os << "wall_ms = " << fmt6(wall_ms) << "\n";
    os << dump_config(cfg);
    os << "filters.previous.digest = "
       << digest_hex(coefficients_text(build_previous_kernel(cfg))) << "\n";
    os << "filters.proposed.digest = "
       << digest_hex(coefficients_text(build_proposed_kernel(cfg))) << "\n";
    os << "filters.lpf.digest = " << digest_hex(coefficients_text(build_receiver_lpf(cfg)))
       << "\n";
    for (const auto& [name, digest] : output_digests)
        os << "output." << name << " = " << digest << "\n";
    write_file(out_dir + "/manifest.txt", os.str());
}

} // namespace

PaprSampleSet collect_papr_samples_serial(const ExperimentConfig& cfg) {
    Pipeline pipe(cfg);
    PaprSampleSet out = alloc_samples(cfg);
    for (uint64_t i = 0; i < cfg.n_symbols_ccdf; ++i) ccdf_symbol_work(pipe, i, out);
    return out;
}

PaprSampleSet collect_papr_samples_parallel(const ExperimentConfig& cfg, int workers) {
    Pipeline pipe(cfg);
    PaprSampleSet out = alloc_samples(cfg);
    int nthreads = resolve_workers(workers);
    int64_t n = static_cast<int64_t>(cfg.n_symbols_ccdf);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
    for (int64_t i = 0; i < n; ++i) ccdf_symbol_work(pipe, static_cast<uint64_t>(i), out);
    (void)nthreads;
    return out;
}

CcdfExperimentResult run_ccdf_experiment(const ExperimentConfig& cfg, int workers) {
    PaprSampleSet samples = (workers == 1) ? collect_papr_samples_serial(cfg)
                                           : collect_papr_samples_parallel(cfg, workers);

    std::vector<double> thresholds;
    for (size_t i = 0;; ++i) {
        double t = cfg.ccdf_threshold_min_db + static_cast<double>(i) * cfg.ccdf_threshold_step_db;
        if (t > cfg.ccdf_threshold_max_db + 1e-12) break;
        thresholds.push_back(t);
    }

    CcdfExperimentResult result;
    result.curves.push_back({"none", 0.0, ccdf(samples.unclipped, thresholds)});
    for (size_t v = 0; v < cfg.variants.size(); ++v)
        for (size_t c = 0; c < cfg.cr_list.size(); ++c)
            result.curves.push_back(
                {cfg.variants[v], cfg.cr_list[c], ccdf(samples.filtered[v][c], thresholds)});

    result.unclipped_papr_db = papr_at_ccdf(result.curves.front().curve, 0.1);

    auto find_variant = [&](const std::string& name) {
        for (size_t v = 0; v < cfg.variants.size(); ++v)
            if (cfg.variants[v] == name) return static_cast<int>(v);
        return -1;
    };
    int vprev = find_variant("previous");
    int vprop = find_variant("proposed");
    if (vprev >= 0 && vprop >= 0) {
        for (size_t c = 0; c < cfg.cr_list.size(); ++c) {
            CcdfExperimentResult::SummaryRow row;
            row.cr = cfg.cr_list[c];
            row.papr_previous_db =
                papr_at_ccdf(ccdf(samples.filtered[vprev][c], thresholds), 0.1);
            row.papr_proposed_db =
                papr_at_ccdf(ccdf(samples.filtered[vprop][c], thresholds), 0.1);
            row.improvement_db = row.papr_previous_db - row.papr_proposed_db;
            result.summary.push_back(row);
        }
    }
    return result;
}

namespace {

// One transmit-channel-receive round for a BER point. Returns the bit errors
// of this symbol.
uint64_t ber_symbol_work(const Pipeline& pipe, const MethodVariant& variant, double cr,
                         double ebn0_db, uint64_t snr_index, uint64_t ordinal) {
    const ExperimentConfig& cfg = pipe.cfg;
    BitStream tx_bits;
    std::vector<double> xp = pipe.synthesize(ordinal, &tx_bits);

    std::vector<double> processed;
    if (variant.name == "none") {
        processed = std::move(xp);
    } else {
        processed = reduce_papr(xp, pipe.clip_for(cr), variant, cfg.ofdm);
    }

    std::vector<double> ext = add_cyclic_prefix(processed, cfg.ofdm.cp_samples());
    StreamRng noise_rng(cfg.master_seed,
                        kNoiseStreamBase + snr_index * kNoiseStreamsPerSnr + ordinal);
    awgn(ext, ebn0_db, pipe.scheme.bits_per_symbol,
         static_cast<double>(cfg.ofdm.oversample), noise_rng);

    std::vector<cplx> y = downconvert(RealBuffer{std::move(ext), cfg.ofdm.sample_rate_hz},
                                      cfg.ofdm, pipe.lpf, cfg.ofdm.cp_samples());
    y = remove_cyclic_prefix(y, cfg.ofdm.cp_samples());
    fft_inplace(y, false);
    double scale = 1.0 / std::sqrt(static_cast<double>(cfg.ofdm.fft_len()));
    for (auto& s : y) s *= scale;
    std::vector<cplx> X = extract_occupied(y, cfg.ofdm.n_subcarriers);
    BitStream rx_bits = demap_symbols(X, pipe.scheme);
    return ber_count(tx_bits, rx_bits);
}

BerPoint run_ber_point_impl(const Pipeline& pipe, const MethodVariant& variant, double cr,
                            double ebn0_db, uint64_t snr_index, int workers) {
    const ExperimentConfig& cfg = pipe.cfg;
    uint64_t bits_per_symbol = pipe.bits_per_ofdm_symbol();
    int nthreads = resolve_workers(workers);

    BerPoint point;
    point.snr_db = ebn0_db;
    uint64_t done = 0;
    std::vector<uint64_t> batch_errors(cfg.ber_batch_symbols);
    while (point.bit_errors < cfg.min_errors_ber && point.bits_total < cfg.bit_budget_ber) {
        int64_t batch = static_cast<int64_t>(cfg.ber_batch_symbols);
        if (workers == 1) {
            for (int64_t j = 0; j < batch; ++j)
                batch_errors[j] =
                    ber_symbol_work(pipe, variant, cr, ebn0_db, snr_index, done + j);
        } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads)
#endif
            for (int64_t j = 0; j < batch; ++j)
                batch_errors[j] =
                    ber_symbol_work(pipe, variant, cr, ebn0_db, snr_index, done + j);
        }
        for (int64_t j = 0; j < batch; ++j) point.bit_errors += batch_errors[j];
        point.bits_total += cfg.ber_batch_symbols * bits_per_symbol;
        done += cfg.ber_batch_symbols;
    }
    (void)nthreads;
    point.ber = static_cast<double>(point.bit_errors) / static_cast<double>(point.bits_total);
    point.confident = point.bit_errors >= cfg.min_errors_ber;
    return point;
}

} // namespace

BerPoint run_ber_point(const ExperimentConfig& cfg, const MethodVariant& variant, double cr,
                       double ebn0_db, int workers) {
    Pipeline pipe(cfg);
    auto it = std::find(cfg.snr_grid_db.begin(), cfg.snr_grid_db.end(), ebn0_db);
    uint64_t snr_index =
        (it == cfg.snr_grid_db.end()) ? 0 : static_cast<uint64_t>(it - cfg.snr_grid_db.begin());
    return run_ber_point_impl(pipe, variant, cr, ebn0_db, snr_index, workers);
}

BerExperimentResult run_ber_experiment(const ExperimentConfig& cfg, int workers) {
    Pipeline pipe(cfg);
    BerExperimentResult result;

    for (size_t s = 0; s < cfg.snr_grid_db.size(); ++s) {
        BerPoint p;
        p.snr_db = cfg.snr_grid_db[s];
        p.ber = analytical_ber(cfg.scheme, p.snr_db);
        p.confident = true;
        result.rows.push_back({"analytic", 0.0, p});
    }
    for (size_t s = 0; s < cfg.snr_grid_db.size(); ++s)
        result.rows.push_back(
            {"none", 0.0,
             run_ber_point_impl(pipe, pipe.null_variant, 0.0, cfg.snr_grid_db[s], s, workers)});
    for (size_t v = 0; v < pipe.variants.size(); ++v)
        for (double cr : cfg.cr_list)
            for (size_t s = 0; s < cfg.snr_grid_db.size(); ++s)
                result.rows.push_back(
                    {cfg.variants[v], cr,
                     run_ber_point_impl(pipe, pipe.variants[v], cr, cfg.snr_grid_db[s], s,
                                        workers)});

    bool have_prev = std::find(cfg.variants.begin(), cfg.variants.end(), "previous") !=
                     cfg.variants.end();
    bool have_prop = std::find(cfg.variants.begin(), cfg.variants.end(), "proposed") !=
                     cfg.variants.end();
    bool snr_in_grid = std::find(cfg.snr_grid_db.begin(), cfg.snr_grid_db.end(),
                                 cfg.summary_snr_db) != cfg.snr_grid_db.end();
    if (have_prev && have_prop && snr_in_grid) {
        for (double cr : cfg.cr_list) {
            BerExperimentResult::SummaryRow row;
            row.cr = cr;
            for (const auto& r : result.rows) {
                if (r.cr == cr && r.point.snr_db == cfg.summary_snr_db) {
                    if (r.variant == "previous") row.ber_previous = r.point.ber;
                    if (r.variant == "proposed") row.ber_proposed = r.point.ber;
                }
            }
            row.difference = row.ber_previous - row.ber_proposed;
            result.summary.push_back(row);
        }
    }
    return result;
}

std::map<std::string, std::string> write_ccdf_outputs(const CcdfExperimentResult& result,
                                                      const ExperimentConfig& cfg,
                                                      const std::string& out_dir,
                                                      double wall_ms) {
    std::filesystem::create_directories(out_dir);
    std::map<std::string, std::string> digests;

    std::ostringstream os;
    os << "variant,cr,threshold_db,ccdf,samples\n";
    for (const auto& c : result.curves)
        for (size_t i = 0; i < c.curve.thresholds_db.size(); ++i)
            os << c.variant << "," << fmt6(c.cr) << "," << fmt6(c.curve.thresholds_db[i]) << ","
               << fmt6(c.curve.probabilities[i]) << "," << c.curve.sample_count << "\n";
    write_file(out_dir + "/ccdf.csv", os.str());
    digests["ccdf.csv"] = digest_hex(os.str());

    if (!result.summary.empty()) {
        std::ostringstream ss;
        ss << "cr,papr_previous_db,papr_proposed_db,improvement_db\n";
        for (const auto& row : result.summary)
            ss << fmt6(row.cr) << "," << fmt6(row.papr_previous_db) << ","
               << fmt6(row.papr_proposed_db) << "," << fmt6(row.improvement_db) << "\n";
        write_file(out_dir + "/ccdf_summary.csv", ss.str());
        digests["ccdf_summary.csv"] = digest_hex(ss.str());
    }
    write_manifest(cfg, "ccdf", digests, out_dir, wall_ms);
    return digests;
}

std::map<std::string, std::string> write_ber_outputs(const BerExperimentResult& result,
                                                     const ExperimentConfig& cfg,
                                                     const std::string& out_dir,
                                                     double wall_ms) {
    std::filesystem::create_directories(out_dir);
    std::map<std::string, std::string> digests;

    std::ostringstream os;
    os << "variant,cr,ebn0_db,bit_errors,bits_total,ber,confident\n";
    for (const auto& r : result.rows)
        os << r.variant << "," << fmt6(r.cr) << "," << fmt6(r.point.snr_db) << ","
           << r.point.bit_errors << "," << r.point.bits_total << "," << fmt6(r.point.ber) << ","
           << (r.point.confident ? 1 : 0) << "\n";
    write_file(out_dir + "/ber.csv", os.str());
    digests["ber.csv"] = digest_hex(os.str());

    if (!result.summary.empty()) {
        std::ostringstream ss;
        ss << "cr,ber_previous,ber_proposed,difference\n";
        for (const auto& row : result.summary)
            ss << fmt6(row.cr) << "," << fmt6(row.ber_previous) << "," << fmt6(row.ber_proposed)
               << "," << fmt6(row.difference) << "\n";
        write_file(out_dir + "/ber_summary.csv", ss.str());
        digests["ber_summary.csv"] = digest_hex(ss.str());
    }
    write_manifest(cfg, "ber", digests, out_dir, wall_ms);
    return digests;
}

void write_filter_dump(const DesignedFilter& f, const std::string& path) {
    std::ostringstream os;
    if (!f.fir_taps.empty()) {
        os << "index,tap\n";
        for (size_t i = 0; i < f.fir_taps.size(); ++i) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", f.fir_taps[i]);
            os << i << "," << buf << "\n";
        }
    } else {
        os << "section,b0,b1,b2,a1,a2\n";
        for (size_t i = 0; i < f.sections.size(); ++i) {
            const auto& s = f.sections[i];
            char buf[220];
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g", i, s.b0, s.b1,
                          s.b2, s.a1, s.a2);
            os << buf << "\n";
        }
    }
    write_file(path, os.str());
}

} // namespace paprlab
