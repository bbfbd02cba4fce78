#ifndef FDX_BEAMFORMING_HPP
#define FDX_BEAMFORMING_HPP

#include "fdx/linalg.hpp"

namespace fdx {
namespace beamforming {

struct DlPrecoder {
    cmat V;  // N_k x alpha, unit-norm columns
    cmat F;  // N_k x alpha, top right-singular vectors of est_H_qk
};

// DL precoder with tunable SI-null steering. F = top-alpha right singular
// vectors of est_H_qk. Each column is then blended with its projection onto
// the null space of si_null_target (the SI channel rows/entries the analog
// taps cannot cover) and re-normalized:
//   v = normalize((1-w) f + w P_null f),  w = si_weight in [0,1].
// si_null_target may have zero rows (no null steering needed); then V = F.
DlPrecoder design_dl_precoder(const cmat& est_H_qk, const cmat& si_null_target,
                              int alpha, double si_weight);

// Top-d_m right singular vectors of the UL channel estimate.
cmat design_ul_precoder(const cmat& est_H_km, int d_m);

// Top left singular vectors of est_H_qk * F (one column per F column).
cmat design_dl_combiner(const cmat& est_H_qk, const cmat& F);

// MMSE UL combiner, unit-norm columns:
//   U ~ (interference_cov + sigma2 I)^{-1} est_H_km G1m V_m.
cmat design_ul_combiner(const cmat& est_H_km, const cmat& V_m, double g1m,
                        const cmat& interference_cov, double sigma2);

// Flat allocation sqrt(P_total/n) per chain.
rvec power_alloc(double p_total_mw, int n);

}  // namespace beamforming
}  // namespace fdx

#endif
