#ifndef FDX_CHANNEL_HPP
#define FDX_CHANNEL_HPP

#include <cstdint>

#include "fdx/linalg.hpp"

namespace fdx {
namespace channel {

// i.i.d. CN(0, 10^(-pathloss_db/10)) entries.
cmat rayleigh_channel(int m, int n, double pathloss_db, uint64_t seed);

// sqrt(P) * (sqrt(K/(K+1)) * H_los + sqrt(1/(K+1)) * H_scatter) with a
// deterministic unit-modulus LOS component h[a,b] = exp(j*pi*(a+b)/4).
// k_factor_db = +inf gives the pure LOS limit, -inf reduces to Rayleigh.
cmat rician_channel(int m, int n, double k_factor_db, double pathloss_db, uint64_t seed);

// Pilot-based LS estimate. Pilots are rows of a DFT matrix (orthogonal,
// constant modulus) scaled so the total pilot power across the n TX
// antennas is pilot_power; Y = H*P + noise, Hhat = Y P^H (P P^H)^{-1}.
// Per-entry error variance is noise_var / (pilot_power * pilot_len / n).
// Requires pilot_len >= n.
cmat estimate_channel(const cmat& H_true, double pilot_power, int pilot_len,
                      double noise_var, uint64_t seed);

struct ChannelSet {
    cmat H_kk;   // SI channel, M_k x N_k
    cmat H_km;   // UL channel, M_k x N_m
    cmat H_qk;   // DL channel, M_q x N_k
    cmat est_H_kk;
    cmat est_H_km;
    cmat est_H_qk;
    double sigma2_k = 0.0;  // linear mW
    double sigma2_q = 0.0;
};

}  // namespace channel
}  // namespace fdx

#endif
