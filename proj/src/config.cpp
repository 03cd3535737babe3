#include "paprlab/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "paprlab/errors.hpp"

namespace paprlab {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    const char* c = value.c_str();
    char* end = nullptr;
    double v = std::strtod(c, &end);
    if (end == c || *end != '\0')
        throw config_error("config: bad numeric value for " + key + ": '" + value + "'");
    return v;
}

int64_t parse_int(const std::string& key, const std::string& value) {
    double v = parse_real(key, value);
    int64_t i = static_cast<int64_t>(v);
    if (static_cast<double>(i) != v)
        throw config_error("config: integer required for " + key + ": '" + value + "'");
    return i;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(parse_real(key, item));
    if (out.empty()) throw config_error("config: empty list for " + key);
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"ofdm.n", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ofdm.n_subcarriers = static_cast<int>(parse_int(k, v)); }},
        {"ofdm.oversample", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ofdm.oversample = static_cast<int>(parse_int(k, v)); }},
        {"ofdm.cp", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ofdm.cp_len = static_cast<int>(parse_int(k, v)); }},
        {"ofdm.bandwidth_hz", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ofdm.bandwidth_hz = parse_real(k, v); }},
        {"ofdm.carrier_hz", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ofdm.carrier_hz = parse_real(k, v); }},
        {"scheme", [](ExperimentConfig& c, const std::string&, const std::string& v) {
             c.scheme = v; }},
        {"variants", [](ExperimentConfig& c, const std::string&, const std::string& v) {
             c.variants = split_list(v); }},
        {"cr_list", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.cr_list = parse_real_list(k, v); }},
        {"snr_grid_db", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.snr_grid_db = parse_real_list(k, v); }},
        {"n_symbols_ccdf", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.n_symbols_ccdf = static_cast<uint64_t>(parse_int(k, v)); }},
        {"bit_budget_ber", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.bit_budget_ber = static_cast<uint64_t>(parse_int(k, v)); }},
        {"min_errors_ber", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.min_errors_ber = static_cast<uint64_t>(parse_int(k, v)); }},
        {"ber_batch_symbols", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ber_batch_symbols = static_cast<uint64_t>(parse_int(k, v)); }},
        {"summary_snr_db", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.summary_snr_db = parse_real(k, v); }},
        {"master_seed", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.master_seed = static_cast<uint64_t>(parse_int(k, v)); }},
        {"sigma_estimate", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "per_symbol") c.sigma_estimate = SigmaEstimate::per_symbol;
             else if (v == "global") c.sigma_estimate = SigmaEstimate::global;
             else throw config_error("config: " + k + " must be per_symbol or global"); }},
        {"ccdf.threshold_min_db", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ccdf_threshold_min_db = parse_real(k, v); }},
        {"ccdf.threshold_max_db", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ccdf_threshold_max_db = parse_real(k, v); }},
        {"ccdf.threshold_step_db", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.ccdf_threshold_step_db = parse_real(k, v); }},
        {"filters.previous.order", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.prev_kernel_order = static_cast<int>(parse_int(k, v)); }},
        {"filters.previous.cutoff_hz", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.prev_kernel_cutoff_hz = parse_real(k, v); }},
        {"filters.proposed.order", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.prop_kernel_order = static_cast<int>(parse_int(k, v)); }},
        {"filters.proposed.ripple_db", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.prop_kernel_ripple_db = parse_real(k, v); }},
        {"filters.proposed.band_low_hz", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.prop_kernel_band_low_hz = parse_real(k, v); }},
        {"filters.proposed.band_high_hz", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.prop_kernel_band_high_hz = parse_real(k, v); }},
        {"filters.lpf.order", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.lpf_order = static_cast<int>(parse_int(k, v)); }},
        {"filters.lpf.cutoff_hz", [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.lpf_cutoff_hz = parse_real(k, v); }},
    };
    return table;
}

void apply_kv(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    auto it = setters().find(key);
    if (it == setters().end()) throw config_error("config: unknown key '" + key + "'");
    it->second(cfg, key, value);
}

void apply_line(ExperimentConfig& cfg, const std::string& raw, const std::string& where) {
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) return;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
        throw config_error("config: expected key = value in " + where + ": '" + trim(raw) + "'");
    apply_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

} // namespace

ExperimentConfig load_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw config_error("config: cannot open " + config_path);
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            apply_line(cfg, line, config_path + ":" + std::to_string(lineno));
        }
    }
    for (const auto& ov : overrides) apply_line(cfg, ov, "--set");
    cfg.ofdm.sample_rate_hz = cfg.ofdm.bandwidth_hz * cfg.ofdm.oversample;
    validate_config(cfg);
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    cfg.ofdm.validate();
    if (cfg.scheme != "qpsk" && cfg.scheme != "qam16")
        throw config_error("config: scheme must be qpsk or qam16");
    if (cfg.variants.empty()) throw config_error("config: at least one variant required");
    for (const auto& v : cfg.variants)
        if (v != "previous" && v != "proposed")
            throw config_error("config: unknown variant '" + v + "'");
    if (std::set<std::string>(cfg.variants.begin(), cfg.variants.end()).size() != cfg.variants.size())
        throw config_error("config: duplicate variant");
    for (double cr : cfg.cr_list)
        if (!(cr > 0.0)) throw config_error("config: clipping ratios must be positive");
    if (cfg.snr_grid_db.empty()) throw config_error("config: snr grid is empty");
    if (cfg.n_symbols_ccdf < 1 || cfg.bit_budget_ber < 1 || cfg.min_errors_ber < 1 ||
        cfg.ber_batch_symbols < 1)
        throw config_error("config: counts must be positive");
    if (!(cfg.ccdf_threshold_step_db > 0.0) ||
        !(cfg.ccdf_threshold_max_db > cfg.ccdf_threshold_min_db))
        throw config_error("config: bad ccdf threshold grid");
}

std::string dump_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    os << "ofdm.n = " << cfg.ofdm.n_subcarriers << "\n";
    os << "ofdm.oversample = " << cfg.ofdm.oversample << "\n";
    os << "ofdm.cp = " << cfg.ofdm.cp_len << "\n";
    os << "ofdm.bandwidth_hz = " << num(cfg.ofdm.bandwidth_hz) << "\n";
    os << "ofdm.carrier_hz = " << num(cfg.ofdm.carrier_hz) << "\n";
    os << "scheme = " << cfg.scheme << "\n";
    os << "variants = ";
    for (size_t i = 0; i < cfg.variants.size(); ++i) os << (i ? "," : "") << cfg.variants[i];
    os << "\n";
    os << "cr_list = ";
    for (size_t i = 0; i < cfg.cr_list.size(); ++i) os << (i ? "," : "") << num(cfg.cr_list[i]);
    os << "\n";
    os << "snr_grid_db = ";
    for (size_t i = 0; i < cfg.snr_grid_db.size(); ++i) os << (i ? "," : "") << num(cfg.snr_grid_db[i]);
    os << "\n";
    os << "n_symbols_ccdf = " << cfg.n_symbols_ccdf << "\n";
    os << "bit_budget_ber = " << cfg.bit_budget_ber << "\n";
    os << "min_errors_ber = " << cfg.min_errors_ber << "\n";
    os << "ber_batch_symbols = " << cfg.ber_batch_symbols << "\n";
    os << "summary_snr_db = " << num(cfg.summary_snr_db) << "\n";
    os << "master_seed = " << cfg.master_seed << "\n";
    os << "sigma_estimate = "
       << (cfg.sigma_estimate == SigmaEstimate::per_symbol ? "per_symbol" : "global") << "\n";
    os << "ccdf.threshold_min_db = " << num(cfg.ccdf_threshold_min_db) << "\n";
    os << "ccdf.threshold_max_db = " << num(cfg.ccdf_threshold_max_db) << "\n";
    os << "ccdf.threshold_step_db = " << num(cfg.ccdf_threshold_step_db) << "\n";
    os << "filters.previous.order = " << cfg.prev_kernel_order << "\n";
    os << "filters.previous.cutoff_hz = " << num(cfg.prev_kernel_cutoff_hz) << "\n";
    os << "filters.proposed.order = " << cfg.prop_kernel_order << "\n";
    os << "filters.proposed.ripple_db = " << num(cfg.prop_kernel_ripple_db) << "\n";
    os << "filters.proposed.band_low_hz = " << num(cfg.prop_kernel_band_low_hz) << "\n";
    os << "filters.proposed.band_high_hz = " << num(cfg.prop_kernel_band_high_hz) << "\n";
    os << "filters.lpf.order = " << cfg.lpf_order << "\n";
    os << "filters.lpf.cutoff_hz = " << num(cfg.lpf_cutoff_hz) << "\n";
    return os.str();
}

DesignedFilter build_previous_kernel(const ExperimentConfig& cfg) {
    FilterSpec spec;
    spec.family = FilterFamily::fir_window;
    spec.kind = FilterKind::highpass;
    spec.edges_hz = {cfg.prev_kernel_cutoff_hz};
    spec.order = cfg.prev_kernel_order;
    spec.sample_rate_hz = cfg.ofdm.sample_rate_hz;
    return design_fir(spec);
}

DesignedFilter build_proposed_kernel(const ExperimentConfig& cfg) {
    FilterSpec spec;
    spec.family = FilterFamily::iir_cheby1;
    spec.kind = FilterKind::bandpass;
    spec.edges_hz = {cfg.prop_kernel_band_low_hz, cfg.prop_kernel_band_high_hz};
    spec.order = cfg.prop_kernel_order;
    spec.passband_ripple_db = cfg.prop_kernel_ripple_db;
    spec.sample_rate_hz = cfg.ofdm.sample_rate_hz;
    return design_cheby1(spec);
}

DesignedFilter build_receiver_lpf(const ExperimentConfig& cfg) {
    FilterSpec spec;
    spec.family = FilterFamily::fir_window;
    spec.kind = FilterKind::lowpass;
    spec.edges_hz = {cfg.lpf_cutoff_hz};
    spec.order = cfg.lpf_order;
    spec.sample_rate_hz = cfg.ofdm.sample_rate_hz;
    return design_fir(spec);
}

MethodVariant build_variant(const std::string& name, const ExperimentConfig& cfg) {
    if (name == "none") return make_null_variant();
    if (name == "previous") return make_variant(name, cfg.ofdm, build_previous_kernel(cfg));
    if (name == "proposed") return make_variant(name, cfg.ofdm, build_proposed_kernel(cfg));
    throw config_error("unknown variant: " + name);
}

} // namespace paprlab
