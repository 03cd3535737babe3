// Command line front end: runs the clipping and filtering experiments and
// writes the CSV outputs plus a manifest describing the run.

#include "CLI11.hpp"

#include "paprlab/config.hpp"
#include "paprlab/errors.hpp"
#include "paprlab/harness.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"OFDM clipping-and-filtering PAPR reduction experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    int workers = 0;

    app.add_option("--config", config_path, "Configuration file (key = value lines)");
    app.add_option("--set", overrides, "Override a config key, e.g. --set cr_list=0.8,1.2");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--workers", workers, "Worker threads (0 = all available, 1 = serial)");

    auto* ccdf = app.add_subcommand("ccdf", "CCDF of PAPR for each variant and clipping ratio");
    auto* ber = app.add_subcommand("ber", "BER over AWGN for each variant and clipping ratio");
    auto* dump = app.add_subcommand("dump-filter", "Print a designed filter as CSV");

    std::string which = "proposed";
    dump->add_option("--variant", which, "previous | proposed | lpf")
        ->check(CLI::IsMember({"previous", "proposed", "lpf"}));

    CLI11_PARSE(app, argc, argv);

    try {
        paprlab::ExperimentConfig cfg = paprlab::load_config(config_path, overrides);

        if (dump->parsed()) {
            paprlab::DesignedFilter f;
            if (which == "previous") f = paprlab::build_previous_kernel(cfg);
            else if (which == "proposed") f = paprlab::build_proposed_kernel(cfg);
            else f = paprlab::build_receiver_lpf(cfg);
            std::filesystem::create_directories(out_dir);
            std::string path = out_dir + "/filter_" + which + ".csv";
            paprlab::write_filter_dump(f, path);
            std::printf("wrote %s (%s)\n", path.c_str(), paprlab::describe(f.spec).c_str());
            return 0;
        }

        auto t0 = std::chrono::steady_clock::now();
        if (ccdf->parsed()) {
            auto result = paprlab::run_ccdf_experiment(cfg, workers);
            auto digests = paprlab::write_ccdf_outputs(result, cfg, out_dir, ms_since(t0));
            for (const auto& [name, digest] : digests)
                std::printf("wrote %s/%s %s\n", out_dir.c_str(), name.c_str(), digest.c_str());
            for (const auto& row : result.summary)
                std::printf("cr=%.2f papr previous=%.3f dB proposed=%.3f dB improvement=%.3f dB\n",
                            row.cr, row.papr_previous_db, row.papr_proposed_db, row.improvement_db);
        } else if (ber->parsed()) {
            auto result = paprlab::run_ber_experiment(cfg, workers);
            auto digests = paprlab::write_ber_outputs(result, cfg, out_dir, ms_since(t0));
            for (const auto& [name, digest] : digests)
                std::printf("wrote %s/%s %s\n", out_dir.c_str(), name.c_str(), digest.c_str());
            for (const auto& row : result.summary)
                std::printf("cr=%.2f ber previous=%.3g proposed=%.3g difference=%.3g\n",
                            row.cr, row.ber_previous, row.ber_proposed, row.difference);
        }
    } catch (const paprlab::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const paprlab::numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    }
    return 0;
}
