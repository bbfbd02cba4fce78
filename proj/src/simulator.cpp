#include "fdx/simulator.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "fdx/analog_canceller.hpp"
#include "fdx/beamforming.hpp"
#include "fdx/channel.hpp"
#include "fdx/digital_canceller.hpp"
#include "fdx/impairments.hpp"
#include "fdx/metrics.hpp"
#include "fdx/rng.hpp"
#include "fdx/waveform.hpp"

namespace fdx {

namespace {

using impairments::ImpairmentProfile;

double dbm2mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw2dbm(double mw) {
    return mw > 0.0 ? 10.0 * std::log10(mw) : -std::numeric_limits<double>::infinity();
}

// sub-stream ids for per-run seed derivation
enum Stream : uint64_t {
    kChanSi = 1, kChanUl, kChanDl,
    kPilotSi, kPilotUl, kPilotDl,
    kDeltaProbe,
    kEstBitsK, kEstBitsM, kEstNoise,
    kDataBitsK, kDataBitsM, kDataNoise,
};

ImpairmentProfile make_profile(const SimConfig& cfg, double p_k_mw) {
    const double per_ant_amp = std::sqrt(p_k_mw / cfg.n_tx_k);
    double mu1_mag = 1.0;
    if (!std::isinf(cfg.irr_db)) {
        const double r = std::pow(10.0, cfg.irr_db / 20.0);
        const double g = (r - 1.0) / (r + 1.0);
        mu1_mag = (1.0 + g) / 2.0;
    }
    // |g1| = |mu1 nu1| lands exactly on sqrt(P_k/N_k)
    return impairments::profile_from_targets(cfg.irr_db, per_ant_amp / mu1_mag,
                                             cfg.iip3_dbm, cfg.n_tx_k);
}

std::vector<uint8_t> gen_bits(size_t n, Rng& rng) {
    std::vector<uint8_t> bits(n);
    for (size_t i = 0; i < n; ++i) bits[i] = static_cast<uint8_t>((rng.bits() >> 43) & 1u);
    return bits;
}

// d parallel 16-QAM OFDM streams, unit average sample power per stream.
struct StreamSignal {
    cmat samples;  // d x n_sym*symbol_len
    std::vector<uint8_t> bits;
};

StreamSignal gen_streams(int d, int n_sym, const waveform::OfdmNumerology& num, Rng& rng) {
    StreamSignal out;
    const size_t bits_per_stream =
        static_cast<size_t>(n_sym) * static_cast<size_t>(num.n_data_subcarriers) * 4;
    out.samples.resize(d, static_cast<Eigen::Index>(n_sym) * num.symbol_len());
    // only data bins carry power, so rescale time samples back to unit power
    const double scale = std::sqrt(static_cast<double>(num.n_subcarriers) /
                                   static_cast<double>(num.n_data_subcarriers));
    out.bits.reserve(static_cast<size_t>(d) * bits_per_stream);
    for (int s = 0; s < d; ++s) {
        auto bits = gen_bits(bits_per_stream, rng);
        cvec syms = waveform::qam16_mod(bits);
        cmat grid = Eigen::Map<cmat>(syms.data(), num.n_data_subcarriers, n_sym);
        out.samples.row(s) = (scale * waveform::ofdm_modulate(grid, num)).transpose();
        out.bits.insert(out.bits.end(), bits.begin(), bits.end());
    }
    return out;
}

cmat gen_noise(int m, Eigen::Index t, double var, Rng& rng) {
    cmat n(m, t);
    if (var <= 0.0) {
        n.setZero();
        return n;
    }
    const double amp = std::sqrt(var);
    for (int i = 0; i < m; ++i)
        for (Eigen::Index l = 0; l < t; ++l) n(i, l) = amp * rng.cgauss();
    return n;
}

// Empirical covariance of the TX distortion delta = xtilde - G1 x over
// probe symbol draws (columns of S, unit-power circular Gaussian).
cmat delta_covariance(const cmat& V, const ImpairmentProfile& prof, const cmat& S) {
    cmat X = V * S;
    cmat Xt = impairments::tx_front_end(X, prof);
    cvec g1(prof.n_chains);
    for (int i = 0; i < prof.n_chains; ++i) g1(i) = prof.gains[static_cast<size_t>(i)].g1;
    cmat D = Xt - g1.asDiagonal() * X;
    return D * D.adjoint() / static_cast<double>(S.cols());
}

cmat probe_symbols(int d, int draws, Rng& rng) {
    cmat S(d, draws);
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < draws; ++l) S(i, l) = rng.cgauss();
    return S;
}

// est_H_kk with tap-covered entries zeroed: the part of the SI channel the
// analog canceller cannot reach, used as the null-steering target.
cmat uncovered_si(const cmat& est_H_kk, const analog_canceller::TapMask& mask) {
    cmat M = est_H_kk;
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            if (mask(i, j)) M(i, j) = cd(0.0, 0.0);
    return M;
}

struct BeamformerSet {
    cmat V_k, F_k, U_q, V_m, U_k;
    cmat delta_cov;
    double si_weight = 0.0;
};

// Algorithm steps 2-5 plus the scalar null-steering sweep: pick the
// si_weight maximizing the estimated sum rate among weights whose predicted
// analog-stage residual stays below lambda_A on every chain. Falls back to
// the minimum-residual weight when no grid point is feasible.
BeamformerSet design_beamformers(const SimConfig& cfg, const channel::ChannelSet& ch,
                                 const cmat& C, const ImpairmentProfile& prof,
                                 double p_k_mw, double p_m_mw,
                                 const analog_canceller::TapMask& mask, uint64_t seed) {
    const int d_k = cfg.effective_d_k();
    const rvec g1k = beamforming::power_alloc(p_k_mw, cfg.n_tx_k);
    const rvec g1m = beamforming::power_alloc(p_m_mw, cfg.n_tx_m);
    const double lambda_mw = dbm2mw(cfg.lambda_a_dbm);

    const cmat null_target = uncovered_si(ch.est_H_kk, mask);
    const cmat A = ch.est_H_kk + C;
    const cmat V_m = beamforming::design_ul_precoder(ch.est_H_km, cfg.d_m);

    Rng probe_rng(mix_seed(seed, kDeltaProbe));
    const cmat S_probe = probe_symbols(d_k, 2000, probe_rng);

    BeamformerSet best;
    best.V_m = V_m;
    double best_rate = -1.0;
    bool best_feasible = false;
    double best_residual = std::numeric_limits<double>::infinity();
    cmat U_q;  // independent of the weight (depends on F only)

    for (int wi = 0; wi <= 10; ++wi) {
        const double w = wi / 10.0;
        auto dl = beamforming::design_dl_precoder(ch.est_H_qk, null_target, d_k, w);
        if (U_q.size() == 0) U_q = beamforming::design_dl_combiner(ch.est_H_qk, dl.F);

        cmat dcov = delta_covariance(dl.V, prof, S_probe);
        cmat G1V = g1k.asDiagonal() * dl.V;
        cmat sig_cov = G1V * G1V.adjoint() + dcov;
        cmat icov = A * sig_cov * A.adjoint();
        double worst_chain = icov.diagonal().real().maxCoeff();
        const bool feasible = worst_chain < lambda_mw;

        cmat U_k = beamforming::design_ul_combiner(ch.est_H_km, V_m, g1m(0), icov, ch.sigma2_k);
        cmat W_k = metrics::interference_covariance(U_k.adjoint(), A, G1V, dcov, ch.sigma2_k);
        double r_ul = metrics::link_rate(U_k.adjoint(), ch.est_H_km, g1m, V_m, W_k);
        cmat W_q = metrics::interference_covariance(U_q.adjoint(), ch.est_H_qk,
                                                    cmat::Zero(cfg.n_tx_k, 1), dcov, ch.sigma2_q);
        double r_dl = metrics::link_rate(U_q.adjoint(), ch.est_H_qk, g1k, dl.V, W_q);
        const double rate = r_ul + r_dl;

        bool take = false;
        if (feasible && !best_feasible) take = true;
        else if (feasible == best_feasible) {
            if (best_feasible) take = rate > best_rate + 1e-12;
            else take = worst_chain < best_residual;
        }
        if (wi == 0 || take) {
            best.V_k = dl.V;
            best.F_k = dl.F;
            best.U_q = U_q;
            best.U_k = U_k;
            best.si_weight = w;
            best_rate = rate;
            best_feasible = feasible;
            best_residual = worst_chain;
        }
    }

    // final distortion covariance at the chosen precoder, denser probe
    Rng final_rng(mix_seed(seed, kDeltaProbe));
    best.delta_cov = delta_covariance(best.V_k, prof, probe_symbols(d_k, 10000, final_rng));
    return best;
}

}  // namespace

RunResult run_once(const SimConfig& cfg, double tx_power_dbm, int run_index) {
    cfg.validate();
    const uint64_t seed = cfg.base_seed + static_cast<uint64_t>(run_index);
    const double p_k_mw = dbm2mw(tx_power_dbm);
    const double p_m_mw = dbm2mw(cfg.p_m_for(tx_power_dbm));
    const auto& num = cfg.numerology;

    RunResult res;
    res.tx_power_dbm = tx_power_dbm;
    res.run = run_index;
    res.seed = seed;

    // --- step 1: channels and pilot estimates ---
    channel::ChannelSet ch;
    ch.sigma2_k = dbm2mw(cfg.noise_floor_k_dbm);
    ch.sigma2_q = dbm2mw(cfg.noise_floor_q_dbm);
    ch.H_kk = channel::rician_channel(cfg.n_rx_k, cfg.n_tx_k, cfg.rician_k_db,
                                      cfg.pathloss_si_db, mix_seed(seed, kChanSi));
    ch.H_km = channel::rayleigh_channel(cfg.n_rx_k, cfg.n_tx_m, cfg.pathloss_ul_db,
                                        mix_seed(seed, kChanUl));
    ch.H_qk = channel::rayleigh_channel(cfg.n_rx_q, cfg.n_tx_k, cfg.pathloss_dl_db,
                                        mix_seed(seed, kChanDl));
    const int lp = cfg.effective_pilot_len();
    ch.est_H_kk = channel::estimate_channel(ch.H_kk, p_k_mw, lp, ch.sigma2_k,
                                            mix_seed(seed, kPilotSi));
    ch.est_H_km = channel::estimate_channel(ch.H_km, p_m_mw, lp, ch.sigma2_k,
                                            mix_seed(seed, kPilotUl));
    ch.est_H_qk = channel::estimate_channel(ch.H_qk, p_k_mw, lp, ch.sigma2_q,
                                            mix_seed(seed, kPilotDl));

    // --- TX impairment profile (step 3's power allocation folds into g1) ---
    const ImpairmentProfile prof = make_profile(cfg, p_k_mw);

    // --- analog canceller on the estimated SI channel ---
    const auto mask = analog_canceller::tap_mask(cfg.n_taps, cfg.n_rx_k, cfg.n_tx_k);
    cmat C = analog_canceller::configure(ch.est_H_kk, mask);
    if (cfg.quantize_taps) C = analog_canceller::quantize(C, cfg.att_step_db, cfg.phase_step_deg);

    // --- steps 2-5: beamformers ---
    const auto bf = design_beamformers(cfg, ch, C, prof, p_k_mw, p_m_mw, mask, seed);
    const rvec g1m = beamforming::power_alloc(p_m_mw, cfg.n_tx_m);
    const cmat HC_true = ch.H_kk + C;

    // --- steps 6-8: residual SI estimation over the pilot window ---
    digital_canceller::ResidualSiModel model;
    cmat U_k_data = bf.U_k;  // data-phase UL combiner (refined below)
    {
        Rng bits_k_rng(mix_seed(seed, kEstBitsK));
        Rng bits_m_rng(mix_seed(seed, kEstBitsM));
        Rng noise_rng(mix_seed(seed, kEstNoise));
        auto sk = gen_streams(cfg.effective_d_k(), cfg.n_est_symbols, num, bits_k_rng);
        auto sm = gen_streams(cfg.d_m, cfg.n_est_symbols, num, bits_m_rng);
        cmat X_k = bf.V_k * sk.samples;
        cmat X_m = bf.V_m * sm.samples;
        cmat x_tilde = impairments::tx_front_end(X_k, prof);
        cmat J = HC_true * x_tilde + gen_noise(cfg.n_rx_k, X_k.cols(), ch.sigma2_k, noise_rng);
        if (cfg.ul_on_during_estimation) J += ch.H_km * (g1m.asDiagonal() * X_m);
        if (cfg.adc_bits > 0) {
            J = digital_canceller::adc_quantize(J, cfg.adc_bits, cfg.papr_headroom_db);
        }
        cmat psi = digital_canceller::basis_for(X_k, cfg.basis);
        model = digital_canceller::estimate_residual(J, psi, cfg.basis);
        if (!cfg.ul_on_during_estimation) {
            // post-cancellation residual over the calibration window: everything
            // the chosen basis cannot remove (image/distortion leakage, ADC
            // clipping products, thermal noise). Its covariance is what the
            // data-phase combiner actually has to live with, so build the MMSE
            // combiner from it instead of the analog-stage prediction used
            // inside the beamformer sweep.
            cmat E = J + digital_canceller::cancel(model, psi);
            cmat icov_post = E * E.adjoint() / static_cast<double>(E.cols());
            U_k_data = beamforming::design_ul_combiner(ch.est_H_km, bf.V_m, g1m(0),
                                                       icov_post, ch.sigma2_k);
        }
    }

    // --- data phase: 16-QAM OFDM packet, UL decoding, residual metrics ---
    Rng bits_k_rng(mix_seed(seed, kDataBitsK));
    Rng bits_m_rng(mix_seed(seed, kDataBitsM));
    Rng noise_rng(mix_seed(seed, kDataNoise));

    const int d_m = cfg.d_m;
    // stream-domain equalizer from estimated channels (flat fading)
    const double stream_scale = std::sqrt(static_cast<double>(num.n_subcarriers) /
                                          static_cast<double>(num.n_data_subcarriers));
    cmat A_ul_est = U_k_data.adjoint() * ch.est_H_km * g1m.asDiagonal() * bf.V_m;

    rvec analog_pow = rvec::Zero(cfg.n_rx_k);   // accumulated |.|^2
    rvec digital_pow = rvec::Zero(cfg.n_rx_k);
    cmat resid_cov = cmat::Zero(cfg.n_rx_k, cfg.n_rx_k);  // residual SI + noise
    long long total_samples = 0;
    long long bit_errors = 0, total_bits = 0;

    const int chunk = 10;  // OFDM symbols per block
    for (int done = 0; done < cfg.n_ofdm_symbols; done += chunk) {
        const int n_sym = std::min(chunk, cfg.n_ofdm_symbols - done);
        auto sk = gen_streams(cfg.effective_d_k(), n_sym, num, bits_k_rng);
        auto sm = gen_streams(d_m, n_sym, num, bits_m_rng);
        const Eigen::Index t = sk.samples.cols();

        cmat X_k = bf.V_k * sk.samples;
        cmat X_m = bf.V_m * sm.samples;
        cmat x_tilde = impairments::tx_front_end(X_k, prof);
        cmat si_resid = HC_true * x_tilde;
        cmat ul_rx = ch.H_km * (g1m.asDiagonal() * X_m);
        cmat noise = gen_noise(cfg.n_rx_k, t, ch.sigma2_k, noise_rng);

        analog_pow += si_resid.cwiseAbs2().rowwise().sum();

        cmat Y = si_resid + ul_rx + noise;
        if (cfg.adc_bits > 0) {
            Y = digital_canceller::adc_quantize(Y, cfg.adc_bits, cfg.papr_headroom_db);
        }
        cmat Z = Y + digital_canceller::cancel(model, digital_canceller::basis_for(X_k, cfg.basis));

        cmat e = Z - ul_rx - noise;  // residual SI (+ ADC error)
        digital_pow += e.cwiseAbs2().rowwise().sum();
        cmat e_noise = Z - ul_rx;    // interference-plus-noise at the combiner input
        resid_cov += e_noise * e_noise.adjoint();
        total_samples += t;

        // UL symbol decisions
        cmat z_eq = A_ul_est.partialPivLu().solve(U_k_data.adjoint() * Z);
        for (int s = 0; s < d_m; ++s) {
            cvec stream = z_eq.row(s).transpose() / stream_scale;
            cmat grid = waveform::ofdm_demodulate(stream, num);
            cvec syms = Eigen::Map<cvec>(grid.data(), grid.size());
            auto rx_bits = waveform::qam16_demod(syms);
            const size_t off = static_cast<size_t>(s) * rx_bits.size();
            for (size_t b = 0; b < rx_bits.size(); ++b) {
                if (rx_bits[b] != sm.bits[off + b]) ++bit_errors;
            }
            total_bits += static_cast<long long>(rx_bits.size());
        }
    }

    const double inv_t = 1.0 / static_cast<double>(total_samples);
    {
        // single-column amplitude matrix carrying the per-chain mean powers
        cmat mean_amp = (analog_pow * inv_t).cwiseSqrt().cast<cd>();
        auto sat = analog_canceller::check_saturation(mean_amp, cfg.lambda_a_dbm);
        res.saturated = sat.saturated;
        res.res_analog_dbm = sat.chain_dbm.maxCoeff();
    }
    res.res_digital_dbm = mw2dbm(digital_pow.maxCoeff() * inv_t);
    res.bit_errors = bit_errors;
    res.bits = total_bits;
    res.ber = total_bits ? static_cast<double>(bit_errors) / static_cast<double>(total_bits) : 0.0;

    // --- rates with true channels; UL uses the measured post-digital
    //     interference-plus-noise covariance ---
    resid_cov *= inv_t;
    cmat W_k_post = U_k_data.adjoint() * resid_cov * U_k_data;
    cmat A_ul = U_k_data.adjoint() * ch.H_km * g1m.asDiagonal() * bf.V_m;
    res.r_ul = metrics::link_rate_eff(A_ul, W_k_post);

    const rvec g1k = beamforming::power_alloc(p_k_mw, cfg.n_tx_k);
    cmat W_q = metrics::interference_covariance(bf.U_q.adjoint(), ch.H_qk,
                                                cmat::Zero(cfg.n_tx_k, 1), bf.delta_cov,
                                                ch.sigma2_q);
    res.r_dl = metrics::link_rate(bf.U_q.adjoint(), ch.H_qk, g1k, bf.V_k, W_q);
    return res;
}

SweepTable monte_carlo(const SimConfig& cfg) {
    cfg.validate();
    const auto powers = cfg.tx_power_points();
    SweepTable table;
    table.runs.resize(powers.size() * static_cast<size_t>(cfg.n_runs));

    const size_t n_jobs = table.runs.size();
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_jobs));

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t j = next.fetch_add(1); j < n_jobs; j = next.fetch_add(1)) {
            const size_t pi = j / static_cast<size_t>(cfg.n_runs);
            const int run = static_cast<int>(j % static_cast<size_t>(cfg.n_runs));
            table.runs[j] = run_once(cfg, powers[pi], run);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (size_t pi = 0; pi < powers.size(); ++pi) {
        PowerPointSummary s;
        s.tx_power_dbm = powers[pi];
        s.n_runs = cfg.n_runs;
        long long errs = 0, bits = 0;
        double res_a = 0.0, res_d = 0.0;
        for (int r = 0; r < cfg.n_runs; ++r) {
            const RunResult& rr = table.runs[pi * static_cast<size_t>(cfg.n_runs) +
                                             static_cast<size_t>(r)];
            s.sat_prob += rr.saturated ? 1.0 : 0.0;
            s.mean_r_ul += rr.r_ul;
            s.mean_r_dl += rr.r_dl;
            errs += rr.bit_errors;
            bits += rr.bits;
            res_a += dbm2mw(rr.res_analog_dbm);
            res_d += dbm2mw(rr.res_digital_dbm);
        }
        const double n = static_cast<double>(cfg.n_runs);
        s.sat_prob /= n;
        s.mean_r_ul /= n;
        s.mean_r_dl /= n;
        s.mean_r_fd = s.mean_r_ul + s.mean_r_dl;
        s.mean_ber = bits ? static_cast<double>(errs) / static_cast<double>(bits) : 0.0;
        if (bits) {
            const double p = s.mean_ber;
            const double half = 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) /
                                                 static_cast<double>(bits));
            s.ber_ci_lo = std::max(0.0, p - half);
            s.ber_ci_hi = std::min(1.0, p + half);
        }
        s.mean_res_analog_dbm = mw2dbm(res_a / n);
        s.mean_res_digital_dbm = mw2dbm(res_d / n);
        table.summary.push_back(s);
    }
    return table;
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void write_results_csv(std::ostream& os, const SweepTable& table) {
    os << "tx_power_dbm,run,seed,sat,res_analog_dbm,res_digital_dbm,r_ul,r_dl,r_fd,ber\n";
    for (const auto& r : table.runs) {
        os << fmt(r.tx_power_dbm) << ',' << r.run << ',' << r.seed << ','
           << (r.saturated ? 1 : 0) << ',' << fmt(r.res_analog_dbm) << ','
           << fmt(r.res_digital_dbm) << ',' << fmt(r.r_ul) << ',' << fmt(r.r_dl) << ','
           << fmt(r.r_fd()) << ',' << fmt(r.ber) << '\n';
    }
}

void write_curves_csv(std::ostream& os, const SweepTable& table) {
    os << "tx_power_dbm,n_runs,sat_prob,mean_r_ul,mean_r_dl,mean_r_fd,mean_ber,"
          "ber_ci_lo,ber_ci_hi,mean_res_analog_dbm,mean_res_digital_dbm\n";
    for (const auto& s : table.summary) {
        os << fmt(s.tx_power_dbm) << ',' << s.n_runs << ',' << fmt(s.sat_prob) << ','
           << fmt(s.mean_r_ul) << ',' << fmt(s.mean_r_dl) << ',' << fmt(s.mean_r_fd) << ','
           << fmt(s.mean_ber) << ',' << fmt(s.ber_ci_lo) << ',' << fmt(s.ber_ci_hi) << ','
           << fmt(s.mean_res_analog_dbm) << ',' << fmt(s.mean_res_digital_dbm) << '\n';
    }
}

}  // namespace fdx
