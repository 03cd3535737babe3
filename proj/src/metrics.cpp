#include "paprlab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "paprlab/errors.hpp"

namespace paprlab {

namespace {

template <typename T>
double papr_db_impl(const std::vector<T>& x) {
    if (x.empty()) throw config_error("papr_db: empty buffer");
    double peak = 0.0, acc = 0.0;
    for (const auto& s : x) {
        double p;
        if constexpr (std::is_same_v<T, double>) p = s * s;
        else p = std::norm(s);
        peak = std::max(peak, p);
        acc += p;
    }
    double mean = acc / static_cast<double>(x.size());
    if (!(mean > 0.0)) throw config_error("papr_db: zero-power input");
    return 10.0 * std::log10(peak / mean);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

} // namespace

double papr_db(const std::vector<double>& x) { return papr_db_impl(x); }
double papr_db(const std::vector<cplx>& x) { return papr_db_impl(x); }

CcdfCurve ccdf(const std::vector<double>& papr_samples_db, const std::vector<double>& thresholds_db) {
    if (papr_samples_db.empty()) throw config_error("ccdf: no samples");
    std::vector<double> sorted = papr_samples_db;
    std::sort(sorted.begin(), sorted.end());

    CcdfCurve curve;
    curve.thresholds_db = thresholds_db;
    curve.sample_count = sorted.size();
    curve.probabilities.resize(thresholds_db.size());
    for (size_t i = 0; i < thresholds_db.size(); ++i) {
        auto it = std::upper_bound(sorted.begin(), sorted.end(), thresholds_db[i]);
        size_t exceed = static_cast<size_t>(sorted.end() - it);
        curve.probabilities[i] = static_cast<double>(exceed) / static_cast<double>(sorted.size());
    }
    return curve;
}

double papr_at_ccdf(const CcdfCurve& curve, double p) {
    if (curve.thresholds_db.empty()) throw config_error("papr_at_ccdf: empty curve");
    const auto& t = curve.thresholds_db;
    const auto& pr = curve.probabilities;
    if (p >= pr.front()) return t.front();
    for (size_t i = 1; i < t.size(); ++i) {
        if (pr[i] <= p) {
            double span = pr[i - 1] - pr[i];
            if (span <= 0.0) return t[i];
            double frac = (pr[i - 1] - p) / span;
            return t[i - 1] + frac * (t[i] - t[i - 1]);
        }
    }
    return t.back();
}

namespace {

double noise_variance_real(double power, double ebn0_db, int bits_per_symbol,
                           double samples_per_bit_factor, double code_rate) {
    if (!(power > 0.0)) throw config_error("awgn: nonpositive signal power");
    if (bits_per_symbol < 1 || !(samples_per_bit_factor > 0.0) || !(code_rate > 0.0))
        throw config_error("awgn: invalid calibration parameters");
    double gamma = std::pow(10.0, ebn0_db / 10.0);
    double samples_per_bit = samples_per_bit_factor / (bits_per_symbol * code_rate);
    return power * samples_per_bit / (2.0 * gamma);
}

} // namespace

void awgn(std::vector<double>& x, double ebn0_db, int bits_per_symbol,
          double samples_per_bit_factor, StreamRng& rng, double code_rate) {
    double s2 = noise_variance_real(mean_power(x), ebn0_db, bits_per_symbol,
                                    samples_per_bit_factor, code_rate);
    double sd = std::sqrt(s2);
    for (double& s : x) s += sd * rng.gaussian();
}

void awgn(std::vector<cplx>& x, double ebn0_db, int bits_per_symbol,
          double samples_per_bit_factor, StreamRng& rng, double code_rate) {
    double s2 = noise_variance_real(mean_power(x), ebn0_db, bits_per_symbol,
                                    samples_per_bit_factor, code_rate);
    double sd = std::sqrt(s2 / 2.0); // half the variance per real dimension
    for (cplx& s : x) s += cplx(sd * rng.gaussian(), sd * rng.gaussian());
}

uint64_t ber_count(const BitStream& tx, const BitStream& rx) {
    if (tx.bits.size() != rx.bits.size())
        throw config_error("ber_count: stream length mismatch");
    uint64_t errs = 0;
    for (size_t i = 0; i < tx.bits.size(); ++i)
        if (tx.bits[i] != rx.bits[i]) ++errs;
    return errs;
}

double analytical_ber(const std::string& scheme, double ebn0_db) {
    double gamma = std::pow(10.0, ebn0_db / 10.0);
    if (scheme == "qpsk") return q_function(std::sqrt(2.0 * gamma));
    if (scheme == "qam16") return 0.75 * q_function(std::sqrt(4.0 * gamma / 5.0));
    throw config_error("analytical_ber: unsupported scheme " + scheme);
}

} // namespace paprlab
