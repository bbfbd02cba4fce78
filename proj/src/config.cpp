#include "fdx/config.hpp"

#include <fstream>

#include <json.hpp>

namespace fdx {

void SimConfig::validate() const {
    if (n_tx_k < 1 || n_rx_k < 1 || n_rx_q < 1 || n_tx_m < 1)
        throw ConfigError("antenna counts must be >= 1");
    if (effective_d_k() > std::min(n_rx_q, n_tx_k))
        throw ConfigError("d_k exceeds min(n_rx_q, n_tx_k)");
    if (d_m > std::min(n_rx_k, n_tx_m))
        throw ConfigError("d_m exceeds min(n_rx_k, n_tx_m)");
    if (n_taps < 0 || n_taps > n_rx_k * n_tx_k)
        throw ConfigError("n_taps out of range");
    if (tx_power_step_db <= 0.0 || tx_power_stop_dbm < tx_power_start_dbm)
        throw ConfigError("bad TX power sweep");
    if (n_runs < 1 || n_ofdm_symbols < 1 || n_est_symbols < 1)
        throw ConfigError("run/symbol counts must be >= 1");
    if (!(irr_db > 0.0)) throw ConfigError("irr_db must be > 0");
    if (adc_bits < 0 || adc_bits > 24) throw ConfigError("adc_bits out of range");
    const int est_samples = n_est_symbols * numerology.symbol_len();
    if (est_samples < 6 * n_tx_k)
        throw ConfigError("estimation window shorter than the basis dimension");
}

int SimConfig::effective_pilot_len() const {
    if (pilot_len > 0) return pilot_len;
    return 4 * std::max({n_tx_k, n_rx_k, n_rx_q, n_tx_m});
}

std::vector<double> SimConfig::tx_power_points() const {
    std::vector<double> pts;
    for (double p = tx_power_start_dbm; p <= tx_power_stop_dbm + 1e-9; p += tx_power_step_db)
        pts.push_back(p);
    return pts;
}

digital_canceller::BasisKind parse_basis(const std::string& name) {
    if (name == "linear") return digital_canceller::BasisKind::linear;
    if (name == "wl" || name == "widely_linear") return digital_canceller::BasisKind::widely_linear;
    if (name == "full" || name == "full_nonlinear") return digital_canceller::BasisKind::full_nonlinear;
    throw ConfigError("unknown basis kind: " + name);
}

void apply_profile(SimConfig& cfg, const std::string& profile) {
    if (profile == "desk") {
        cfg.n_runs = 100;
        cfg.n_ofdm_symbols = 20;
    } else if (profile == "paper") {
        cfg.n_runs = 1000;
        cfg.n_ofdm_symbols = 200;
    } else {
        throw ConfigError("unknown profile: " + profile);
    }
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    SimConfig cfg;
    try {
        for (auto& [key, val] : j.items()) {
            if (key == "n_tx_k") cfg.n_tx_k = val.get<int>();
            else if (key == "n_rx_k") cfg.n_rx_k = val.get<int>();
            else if (key == "n_rx_q") cfg.n_rx_q = val.get<int>();
            else if (key == "n_tx_m") cfg.n_tx_m = val.get<int>();
            else if (key == "d_k") cfg.d_k = val.get<int>();
            else if (key == "d_m") cfg.d_m = val.get<int>();
            else if (key == "tx_power_start_dbm") cfg.tx_power_start_dbm = val.get<double>();
            else if (key == "tx_power_stop_dbm") cfg.tx_power_stop_dbm = val.get<double>();
            else if (key == "tx_power_step_db") cfg.tx_power_step_db = val.get<double>();
            else if (key == "p_m_dbm") cfg.p_m_dbm = val.get<double>();
            else if (key == "noise_floor_k_dbm") cfg.noise_floor_k_dbm = val.get<double>();
            else if (key == "noise_floor_q_dbm") cfg.noise_floor_q_dbm = val.get<double>();
            else if (key == "pathloss_ul_db") cfg.pathloss_ul_db = val.get<double>();
            else if (key == "pathloss_dl_db") cfg.pathloss_dl_db = val.get<double>();
            else if (key == "pathloss_si_db") cfg.pathloss_si_db = val.get<double>();
            else if (key == "rician_k_db") cfg.rician_k_db = val.get<double>();
            else if (key == "irr_db") cfg.irr_db = val.get<double>();
            else if (key == "iip3_dbm") cfg.iip3_dbm = val.get<double>();
            else if (key == "adc_bits") cfg.adc_bits = val.get<int>();
            else if (key == "papr_headroom_db") cfg.papr_headroom_db = val.get<double>();
            else if (key == "lambda_a_dbm") cfg.lambda_a_dbm = val.get<double>();
            else if (key == "n_taps") cfg.n_taps = val.get<int>();
            else if (key == "att_step_db") cfg.att_step_db = val.get<double>();
            else if (key == "phase_step_deg") cfg.phase_step_deg = val.get<double>();
            else if (key == "quantize_taps") cfg.quantize_taps = val.get<bool>();
            else if (key == "basis") cfg.basis = parse_basis(val.get<std::string>());
            else if (key == "n_est_symbols") cfg.n_est_symbols = val.get<int>();
            else if (key == "ul_on_during_estimation") cfg.ul_on_during_estimation = val.get<bool>();
            else if (key == "pilot_len") cfg.pilot_len = val.get<int>();
            else if (key == "n_runs") cfg.n_runs = val.get<int>();
            else if (key == "n_ofdm_symbols") cfg.n_ofdm_symbols = val.get<int>();
            else if (key == "base_seed") cfg.base_seed = val.get<uint64_t>();
            else if (key == "threads") cfg.threads = val.get<int>();
            else throw ConfigError("unknown config key: " + key);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config value error: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

}  // namespace fdx
