// Times the serial reference path against the parallel one on the PAPR
// sampling workload and verifies they produce the same samples.

#include "paprlab/config.hpp"
#include "paprlab/harness.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double>(dt).count();
}

} // namespace

int main(int argc, char** argv) {
    size_t n_symbols = 4000;
    if (argc > 1) n_symbols = static_cast<size_t>(std::atoll(argv[1]));

    paprlab::ExperimentConfig cfg = paprlab::load_config("", {});
    cfg.n_symbols_ccdf = n_symbols;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("papr sampling benchmark: %zu symbols, %zu clipping ratios, %d threads\n",
                n_symbols, cfg.cr_list.size(), threads);

    auto t0 = std::chrono::steady_clock::now();
    auto serial = paprlab::collect_papr_samples_serial(cfg);
    double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    auto parallel = paprlab::collect_papr_samples_parallel(cfg, 0);
    double t_parallel = seconds_since(t0);

    bool same = serial.unclipped == parallel.unclipped && serial.filtered == parallel.filtered;

    double rate_s = static_cast<double>(n_symbols) / t_serial;
    double rate_p = static_cast<double>(n_symbols) / t_parallel;
    std::printf("serial   %8.3f s  %9.1f symbols/s\n", t_serial, rate_s);
    std::printf("parallel %8.3f s  %9.1f symbols/s\n", t_parallel, rate_p);
    std::printf("speedup  %.2fx, samples %s\n", t_serial / t_parallel,
                same ? "identical" : "DIFFER");
    return same ? 0 : 1;
}
