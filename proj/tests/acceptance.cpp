// End to end acceptance checks. Each check prints exactly one PASS/FAIL line;
// the process exits nonzero if any check fails. Tolerances and run lengths are
// pinned here on purpose so a regression cannot hide behind a config change.

#include "paprlab/config.hpp"
#include "paprlab/errors.hpp"
#include "paprlab/harness.hpp"
#include "paprlab/metrics.hpp"
#include "paprlab/modem.hpp"
#include "paprlab/ofdm.hpp"
#include "paprlab/papr.hpp"
#include "paprlab/rng.hpp"
#include "paprlab/signal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using paprlab::cplx;

namespace {

int g_failures = 0;

void report(bool pass, const char* label, const std::string& detail) {
    std::printf("%s %s (%s)\n", pass ? "PASS" : "FAIL", label, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double>(dt).count();
}

std::vector<double> default_thresholds() {
    std::vector<double> t;
    for (int i = 0; i <= 800; ++i) t.push_back(0.02 * i);
    return t;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Baseband transmit and receive, no channel impairment, returns bit errors.
uint64_t noiseless_chain_errors(const std::string& scheme_name, uint64_t bits_wanted) {
    paprlab::ExperimentConfig cfg;
    cfg.scheme = scheme_name;
    const auto& p = cfg.ofdm;
    auto scheme = paprlab::make_scheme(scheme_name);
    auto lpf = paprlab::build_receiver_lpf(cfg);

    int bits_per_symbol = p.n_subcarriers * scheme.bits_per_symbol;
    uint64_t n_symbols = (bits_wanted + bits_per_symbol - 1) / bits_per_symbol;
    double scale = 1.0 / std::sqrt(static_cast<double>(p.fft_len()));

    uint64_t errors = 0;
    for (uint64_t i = 0; i < n_symbols; ++i) {
        auto bits = paprlab::generate_bits(static_cast<size_t>(bits_per_symbol), cfg.master_seed, i);
        auto X = paprlab::map_bits(bits, scheme);
        auto x = paprlab::ofdm_modulate(paprlab::oversample_spectrum(X, p.oversample), p);
        auto xp = paprlab::upconvert(x, p);
        auto frame = paprlab::add_cyclic_prefix(xp.samples, p.cp_samples());

        paprlab::RealBuffer rx;
        rx.samples = std::move(frame);
        rx.sample_rate_hz = p.sample_rate_hz;
        auto y = paprlab::downconvert(rx, p, lpf, p.cp_samples());
        auto core = paprlab::remove_cyclic_prefix(y, p.cp_samples());
        paprlab::fft_inplace(core, false);
        for (auto& v : core) v *= scale;
        auto hat = paprlab::extract_occupied(core, p.n_subcarriers);
        auto decided = paprlab::demap_symbols(hat, scheme);
        errors += paprlab::ber_count(bits, decided);
    }
    return errors;
}

void check_unclipped_ccdf_oracle() {
    auto t0 = std::chrono::steady_clock::now();

    paprlab::OfdmParams p;
    p.n_subcarriers = 128;
    p.oversample = 1;
    p.cp_len = 0;
    p.bandwidth_hz = 1e6;
    p.sample_rate_hz = 1e6;
    p.carrier_hz = 0.25e6;
    p.validate();

    auto qpsk = paprlab::make_scheme("qpsk");
    const uint64_t n_symbols = 100000;
    std::vector<double> samples;
    samples.reserve(n_symbols);
    for (uint64_t i = 0; i < n_symbols; ++i) {
        auto bits = paprlab::generate_bits(256, 12345, i);
        auto X = paprlab::map_bits(bits, qpsk);
        auto x = paprlab::ofdm_modulate(X, p);
        samples.push_back(paprlab::papr_db(x));
    }
    auto curve = paprlab::ccdf(samples, default_thresholds());
    double measured = paprlab::papr_at_ccdf(curve, 0.1);

    // With independent complex Gaussian samples, P(PAPR > z) = 1 - (1 - e^-z)^N;
    // inverting at probability 0.1 gives the expected reading.
    double z_expect = -std::log(1.0 - std::pow(0.9, 1.0 / 128.0));
    double expect_db = 10.0 * std::log10(z_expect);
    double elapsed = seconds_since(t0);

    char buf[160];
    std::snprintf(buf, sizeof(buf), "measured %.3f dB, closed form %.3f dB, %.1f s", measured,
                  expect_db, elapsed);
    report(std::abs(measured - expect_db) <= 0.3 && elapsed < 60.0,
           "unclipped-papr-ccdf-matches-order-statistics", buf);
}

void check_improvement_ordering() {
    auto t0 = std::chrono::steady_clock::now();
    paprlab::ExperimentConfig cfg;
    auto result = paprlab::run_ccdf_experiment(cfg, 0);
    double elapsed = seconds_since(t0);

    bool ok = result.summary.size() == cfg.cr_list.size();
    std::string detail;
    char buf[80];
    for (size_t i = 0; ok && i < result.summary.size(); ++i) {
        const auto& row = result.summary[i];
        if (!(row.improvement_db > 0.0)) ok = false;
        if (i > 0) {
            const auto& prev = result.summary[i - 1];
            if (!(row.papr_previous_db > prev.papr_previous_db)) ok = false;
            if (!(row.papr_proposed_db > prev.papr_proposed_db)) ok = false;
            if (!(row.improvement_db < prev.improvement_db)) ok = false;
        }
        std::snprintf(buf, sizeof(buf), "%s%.2f", i ? " " : "", row.improvement_db);
        detail += buf;
    }
    ok = ok && elapsed < 300.0;
    std::snprintf(buf, sizeof(buf), " dB gains over cr 0.8..1.6, %.1f s", elapsed);
    report(ok, "papr-improvement-positive-and-shrinking-with-cr", detail + buf);
}

void check_clip_bound() {
    paprlab::ExperimentConfig cfg;
    const auto& p = cfg.ofdm;
    auto qpsk = paprlab::make_scheme("qpsk");

    bool ok = true;
    uint64_t engaged = 0, tested = 0;
    for (uint64_t i = 0; i < 1000 && ok; ++i) {
        auto bits = paprlab::generate_bits(256, 777, i);
        auto X = paprlab::map_bits(bits, qpsk);
        auto x = paprlab::ofdm_modulate(paprlab::oversample_spectrum(X, p.oversample), p);
        auto xp = paprlab::upconvert(x, p).samples;
        double peak_pre = 0.0;
        for (double v : xp) peak_pre = std::max(peak_pre, std::abs(v));

        for (double cr : cfg.cr_list) {
            double A = paprlab::clipping_level(cr, paprlab::rms(xp));
            auto xc = paprlab::clip_passband(xp, A);
            double peak = 0.0;
            for (double v : xc) peak = std::max(peak, std::abs(v));
            ++tested;
            if (peak_pre > A) {
                ++engaged;
                if (peak != A) ok = false; // bound must be hit exactly
            } else if (peak != peak_pre) {
                ok = false;
            }
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "%llu clip runs, %llu engaged, bound exact",
                  static_cast<unsigned long long>(tested), static_cast<unsigned long long>(engaged));
    report(ok && engaged > 0, "clipping-bound-holds-exactly", buf);
}

void check_peak_regrowth() {
    paprlab::ExperimentConfig cfg;
    const auto& p = cfg.ofdm;
    auto qpsk = paprlab::make_scheme("qpsk");
    auto variant = paprlab::build_variant("proposed", cfg);

    paprlab::ClipConfig clip;
    clip.cr = 1.0;

    const uint64_t n_symbols = 10000;
    uint64_t regrown = 0;
    for (uint64_t i = 0; i < n_symbols; ++i) {
        auto bits = paprlab::generate_bits(256, cfg.master_seed, i);
        auto X = paprlab::map_bits(bits, qpsk);
        auto x = paprlab::ofdm_modulate(paprlab::oversample_spectrum(X, p.oversample), p);
        auto xp = paprlab::upconvert(x, p).samples;

        paprlab::PaprTelemetry tm;
        paprlab::reduce_papr(xp, clip, variant, p, &tm);
        if (tm.papr_filt_db >= tm.papr_clip_db) ++regrown;
    }
    double frac = static_cast<double>(regrown) / static_cast<double>(n_symbols);
    char buf[100];
    std::snprintf(buf, sizeof(buf), "regrowth on %.1f%% of %llu symbols at cr 1.0", 100.0 * frac,
                  static_cast<unsigned long long>(n_symbols));
    report(frac >= 0.95, "filtering-regrows-clipped-peaks", buf);
}

void check_unclipped_ber_oracle() {
    auto t0 = std::chrono::steady_clock::now();
    paprlab::ExperimentConfig cfg;
    cfg.min_errors_ber = cfg.bit_budget_ber; // always spend the whole budget
    auto none = paprlab::make_null_variant();

    bool ok = true;
    std::string detail;
    for (double snr : {2.0, 4.0, 6.0}) {
        auto point = paprlab::run_ber_point(cfg, none, 1.0, snr, 0);
        double want = paprlab::analytical_ber("qpsk", snr);
        double rel = std::abs(point.ber - want) / want;
        if (point.bit_errors < 100 || point.bits_total < cfg.bit_budget_ber || rel > 0.10)
            ok = false;
        char buf[120];
        std::snprintf(buf, sizeof(buf), "%s%g dB: %.3e vs %.3e (%+.1f%%)", detail.empty() ? "" : "; ",
                      snr, point.ber, want, 100.0 * (point.ber - want) / want);
        detail += buf;
    }
    double elapsed = seconds_since(t0);
    ok = ok && elapsed < 300.0;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "; %.1f s", elapsed);
    report(ok, "unclipped-qpsk-ber-matches-closed-form", detail + buf);
}

void check_ber_monotone_in_cr() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const char* scheme : {"qpsk", "qam16"}) {
        paprlab::ExperimentConfig cfg;
        cfg.scheme = scheme;
        cfg.min_errors_ber = 10000;
        for (const auto& name : cfg.variants) {
            auto variant = paprlab::build_variant(name, cfg);
            double last = 1.0;
            for (double cr : cfg.cr_list) {
                auto point = paprlab::run_ber_point(cfg, variant, cr, 6.0, 0);
                if (!(point.ber < last)) ok = false;
                last = point.ber;
            }
            char buf[80];
            std::snprintf(buf, sizeof(buf), "%s%s/%s end %.2e", detail.empty() ? "" : "; ", scheme,
                          name.c_str(), last);
            detail += buf;
        }
    }
    double elapsed = seconds_since(t0);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "; %.1f s", elapsed);
    report(ok, "ber-at-6db-strictly-improves-with-milder-clipping", detail + buf);
}

void check_filter_envelopes() {
    paprlab::ExperimentConfig cfg;
    bool ok = true;
    std::string why;

    auto proposed = paprlab::build_proposed_kernel(cfg);
    for (const auto& s : proposed.sections) {
        cplx disc = std::sqrt(cplx(s.a1 * s.a1 - 4.0 * s.a2, 0.0));
        double m = std::max(std::abs((-s.a1 + disc) / 2.0), std::abs((-s.a1 - disc) / 2.0));
        if (!(m < 1.0)) {
            ok = false;
            why = "pole on or outside unit circle";
        }
    }

    double lo = cfg.prop_kernel_band_low_hz, hi = cfg.prop_kernel_band_high_hz;
    double ripple = cfg.prop_kernel_ripple_db;
    for (int i = 0; i < 4096 && ok; ++i) {
        double f = lo + (hi - lo) * static_cast<double>(i) / 4095.0;
        double mag = 20.0 * std::log10(std::abs(paprlab::frequency_response_at(proposed, f)));
        if (mag > 0.05 || mag < -ripple - 0.05) {
            ok = false;
            why = "passband magnitude outside the ripple envelope";
        }
    }

    auto stopband_monotone = [&](double from, double to) {
        double prev_mag = 1e9;
        for (int i = 0; i <= 512; ++i) {
            double f = from + (to - from) * static_cast<double>(i) / 512.0;
            double mag = std::abs(paprlab::frequency_response_at(proposed, f));
            if (mag > prev_mag + 1e-12) return false;
            prev_mag = mag;
        }
        return true;
    };
    if (ok && !stopband_monotone(lo, 0.05e6)) {
        ok = false;
        why = "lower stopband not monotone";
    }
    if (ok && !stopband_monotone(hi, 3.95e6)) {
        ok = false;
        why = "upper stopband not monotone";
    }

    auto previous = paprlab::build_previous_kernel(cfg);
    auto lpf = paprlab::build_receiver_lpf(cfg);
    for (const auto* f : {&previous, &lpf}) {
        const auto& taps = f->fir_taps;
        for (size_t k = 0; ok && k < taps.size(); ++k) {
            if (taps[k] != taps[taps.size() - 1 - k]) {
                ok = false;
                why = "fir taps not exactly symmetric";
            }
        }
    }

    report(ok, "default-filters-meet-design-envelopes",
           ok ? "poles stable, ripple envelope held, stopbands monotone, fir symmetric" : why);
}

void check_worker_count_invariance() {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "papr_acceptance_workers";
    fs::remove_all(base);
    fs::create_directories(base);

    std::string common = std::string(PAPR_LAB_BIN) +
                         " ccdf --set n_symbols_ccdf=2000 --set master_seed=4242";
    std::string run1 = common + " --workers 1 --out " + (base / "w1").string() + " > /dev/null 2>&1";
    std::string run2 = common + " --workers 2 --out " + (base / "w2").string() + " > /dev/null 2>&1";

    int rc1 = std::system(run1.c_str());
    int rc2 = std::system(run2.c_str());

    bool ok = rc1 == 0 && rc2 == 0;
    std::string why = ok ? "" : "cli run failed";
    for (const char* name : {"ccdf.csv", "ccdf_summary.csv"}) {
        if (!ok) break;
        auto a = read_file((base / "w1" / name).string());
        auto b = read_file((base / "w2" / name).string());
        if (a.empty() || a != b) {
            ok = false;
            why = std::string(name) + " differs between worker counts";
        }
    }
    report(ok, "ccdf-output-byte-identical-across-worker-counts",
           ok ? "1 and 2 workers, same seed, same bytes" : why);
}

void check_numerical_core() {
    paprlab::StreamRng rng(31337, 0);
    bool ok = true;
    std::string why;

    const size_t sizes[] = {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    int vectors = 0;
    for (int rep = 0; rep < 100 && ok; ++rep) {
        for (size_t n : sizes) {
            std::vector<cplx> x(n);
            for (auto& v : x) v = cplx(rng.gaussian(), rng.gaussian());

            std::vector<cplx> want(n);
            for (size_t k = 0; k < n; ++k) {
                cplx acc = 0.0;
                for (size_t m = 0; m < n; ++m) {
                    double a = -2.0 * M_PI * static_cast<double>(k * m) / static_cast<double>(n);
                    acc += x[m] * cplx(std::cos(a), std::sin(a));
                }
                want[k] = acc;
            }
            auto got = x;
            paprlab::fft_inplace(got, false);

            double num = 0.0, den = 0.0, e_time = 0.0, e_freq = 0.0;
            for (size_t k = 0; k < n; ++k) {
                num += std::norm(got[k] - want[k]);
                den += std::norm(want[k]);
                e_time += std::norm(x[k]);
                e_freq += std::norm(got[k]);
            }
            if (std::sqrt(num / den) > 1e-10) {
                ok = false;
                why = "transform deviates from direct evaluation";
                break;
            }
            if (std::abs(e_freq - static_cast<double>(n) * e_time) /
                    (static_cast<double>(n) * e_time) >
                1e-10) {
                ok = false;
                why = "energy identity violated";
                break;
            }
            ++vectors;
        }
    }

    uint64_t err_qpsk = 0, err_qam = 0;
    if (ok) {
        err_qpsk = noiseless_chain_errors("qpsk", 100000);
        err_qam = noiseless_chain_errors("qam16", 100000);
        if (err_qpsk != 0 || err_qam != 0) {
            ok = false;
            why = "noiseless chain is not error free";
        }
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%d vectors vs direct transform, noiseless errors qpsk=%llu qam16=%llu", vectors,
                  static_cast<unsigned long long>(err_qpsk),
                  static_cast<unsigned long long>(err_qam));
    report(ok, "transform-oracle-and-noiseless-chain-clean", ok ? buf : why);
}

} // namespace

int main() {
    try {
        check_unclipped_ccdf_oracle();
        check_improvement_ordering();
        check_clip_bound();
        check_peak_regrowth();
        check_unclipped_ber_oracle();
        check_ber_monotone_in_cr();
        check_filter_envelopes();
        check_worker_count_invariance();
        check_numerical_core();
    } catch (const std::exception& e) {
        std::printf("FAIL unexpected-exception (%s)\n", e.what());
        ++g_failures;
    }
    return g_failures == 0 ? 0 : 1;
}
