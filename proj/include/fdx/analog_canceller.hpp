#ifndef FDX_ANALOG_CANCELLER_HPP
#define FDX_ANALOG_CANCELLER_HPP

#include "fdx/linalg.hpp"

namespace fdx {
namespace analog_canceller {

using TapMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// First n_taps entries true in column-major order over an m x n grid.
TapMask tap_mask(int n_taps, int m, int n);

// Ideal tap values: C[i,j] = -est_H_kk[i,j] on the mask, zero elsewhere.
// This is the exact minimizer of |est_H_kk + C|_F under the support mask.
cmat configure(const cmat& est_H_kk, const TapMask& mask);

// Hardware attenuation/phase granularity. Magnitudes snap to a dB lattice
// referenced to the largest tap magnitude (attenuation range [0, 60] dB,
// deeper values clamp to zero); phases snap to multiples of phase_step_deg.
// Ties round half away from zero.
cmat quantize(const cmat& values, double att_step_db, double phase_step_deg);

// Canceller output C * x_tilde (taps sit after the PA, so they see the
// impaired transmit signal).
cmat apply(const cmat& C, const cmat& x_tilde);

struct SaturationReport {
    rvec chain_dbm;   // time-average power per RX chain
    bool saturated = false;  // any chain at or above lambda_A
};

SaturationReport check_saturation(const cmat& residual, double lambda_a_dbm);

struct CancellerTaps {
    int n_taps = 0;
    TapMask mask;
    cmat values;
    double att_step_db = 0.02;
    double phase_step_deg = 0.13;
    double lambda_a_dbm = -47.76;
};

}  // namespace analog_canceller
}  // namespace fdx

#endif
