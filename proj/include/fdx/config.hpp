#ifndef FDX_CONFIG_HPP
#define FDX_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdx/digital_canceller.hpp"
#include "fdx/waveform.hpp"

namespace fdx {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All defaults follow the evaluated system: 4x4 full-duplex node, single
// antenna uplink node, 1.4 MHz 16-QAM OFDM, -110/-90 dBm noise floors,
// 110 dB link / 40 dB SI pathloss, 30 dB IRR, 15 dBm IIP3, 14-bit ADCs
// with 10 dB PAPR headroom and a -47.76 dBm saturation threshold.
struct SimConfig {
    // antennas / streams
    int n_tx_k = 4;   // N_k
    int n_rx_k = 4;   // M_k
    int n_rx_q = 4;   // M_q
    int n_tx_m = 1;   // N_m
    int d_k = 0;      // DL streams; 0 = min(n_rx_q, n_tx_k)
    int d_m = 1;      // UL streams

    // power sweep (node k); node m follows unless p_m_dbm is set
    double tx_power_start_dbm = 20.0;
    double tx_power_stop_dbm = 40.0;
    double tx_power_step_db = 2.0;
    double p_m_dbm = std::numeric_limits<double>::quiet_NaN();  // NaN: track P_k

    // noise and propagation
    double noise_floor_k_dbm = -110.0;
    double noise_floor_q_dbm = -90.0;
    double pathloss_ul_db = 110.0;
    double pathloss_dl_db = 110.0;
    double pathloss_si_db = 40.0;
    double rician_k_db = 35.0;

    // TX impairments
    double irr_db = 30.0;
    double iip3_dbm = 15.0;

    // RX front end
    int adc_bits = 14;  // 0 disables ADC quantization
    double papr_headroom_db = 10.0;
    double lambda_a_dbm = -47.76;

    // analog canceller
    int n_taps = 12;
    double att_step_db = 0.02;
    double phase_step_deg = 0.13;
    bool quantize_taps = true;

    // digital canceller
    digital_canceller::BasisKind basis = digital_canceller::BasisKind::full_nonlinear;
    int n_est_symbols = 2;  // estimation window, OFDM symbols
    // default: half-duplex calibration window; the measured post-cancellation
    // residual then also drives the data-phase UL combiner
    bool ul_on_during_estimation = false;

    // pilots (channel estimation)
    int pilot_len = 0;  // 0 = 4 * max antenna count

    // Monte Carlo
    int n_runs = 1000;
    int n_ofdm_symbols = 200;
    uint64_t base_seed = 1;
    int threads = 0;  // 0 = hardware concurrency

    waveform::OfdmNumerology numerology;

    void validate() const;
    int effective_d_k() const { return d_k > 0 ? d_k : std::min(n_rx_q, n_tx_k); }
    int effective_pilot_len() const;
    double p_m_for(double p_k_dbm) const { return std::isnan(p_m_dbm) ? p_k_dbm : p_m_dbm; }
    std::vector<double> tx_power_points() const;
};

// Reads a JSON config file; unknown keys are rejected. Throws ConfigError.
SimConfig load_config(const std::string& path);

// "desk" (100 runs, 20 OFDM symbols) or "paper" (1000 runs, 200 symbols).
void apply_profile(SimConfig& cfg, const std::string& profile);

digital_canceller::BasisKind parse_basis(const std::string& name);

}  // namespace fdx

#endif
