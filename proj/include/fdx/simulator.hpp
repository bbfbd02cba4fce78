#ifndef FDX_SIMULATOR_HPP
#define FDX_SIMULATOR_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fdx/config.hpp"
#include "fdx/linalg.hpp"

namespace fdx {

struct RunResult {
    double tx_power_dbm = 0.0;
    int run = 0;
    uint64_t seed = 0;
    bool saturated = false;
    double res_analog_dbm = 0.0;   // worst RX chain, analog stage
    double res_digital_dbm = 0.0;  // worst RX chain, after digital cancellation
    double r_ul = 0.0;             // bits/s/Hz, true channels
    double r_dl = 0.0;
    double r_fd() const { return r_ul + r_dl; }
    double ber = 0.0;
    long long bit_errors = 0;
    long long bits = 0;
};

struct PowerPointSummary {
    double tx_power_dbm = 0.0;
    int n_runs = 0;
    double sat_prob = 0.0;
    double mean_r_ul = 0.0;
    double mean_r_dl = 0.0;
    double mean_r_fd = 0.0;
    double mean_ber = 0.0;      // pooled over bits
    double ber_ci_lo = 0.0;     // 95% binomial (normal approx) on pooled bits
    double ber_ci_hi = 0.0;
    double mean_res_analog_dbm = 0.0;   // mean over runs of linear power, in dBm
    double mean_res_digital_dbm = 0.0;
};

struct SweepTable {
    std::vector<RunResult> runs;  // ordered by (power point, run index)
    std::vector<PowerPointSummary> summary;
};

// One Monte Carlo run at a fixed TX power; seed = base_seed + run_index.
RunResult run_once(const SimConfig& cfg, double tx_power_dbm, int run_index);

// Full power sweep; runs execute on a thread pool but the table is a
// deterministic function of (config, seeds).
SweepTable monte_carlo(const SimConfig& cfg);

void write_results_csv(std::ostream& os, const SweepTable& table);
void write_curves_csv(std::ostream& os, const SweepTable& table);

}  // namespace fdx

#endif
