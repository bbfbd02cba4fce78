#ifndef FDX_DIGITAL_CANCELLER_HPP
#define FDX_DIGITAL_CANCELLER_HPP

#include "fdx/impairments.hpp"
#include "fdx/linalg.hpp"

namespace fdx {
namespace digital_canceller {

enum class BasisKind { linear = 1, widely_linear = 2, full_nonlinear = 6 };

inline int basis_blocks(BasisKind k) { return static_cast<int>(k); }

// Basis rows for a given kind, truncating the full 6-block expansion.
cmat basis_for(const cmat& X, BasisKind kind);

struct ResidualSiModel {
    cmat H_breve;  // M_k x (B * N_k)
    BasisKind kind = BasisKind::full_nonlinear;
    linalg::RankReport rank;
};

// LS estimate of the residual SI matrix from RX samples J (M_k x L) and the
// basis Psi (B*N_k x L), via RQ orthogonalization and back substitution.
// Requires L >= rows(Psi).
ResidualSiModel estimate_residual(const cmat& J, const cmat& Psi,
                                  BasisKind kind = BasisKind::full_nonlinear);

// Digital cancellation signal xi = -H_breve_hat * psi.
cmat cancel(const ResidualSiModel& model, const cmat& psi);

// Per-chain power (dBm) of J + xi - ul_signal - noise: the residual SI left
// after digital cancellation, isolated with simulator-side ground truth.
rvec residual_after_digital(const cmat& J, const ResidualSiModel& model,
                            const cmat& psi, const cmat& ul_signal,
                            const cmat& noise);

// Midrise ADC, applied per chain to I and Q. Full scale per chain is the
// chain RMS raised by headroom_db; samples clip at full scale.
cmat adc_quantize(const cmat& samples, int bits, double headroom_db);

}  // namespace digital_canceller
}  // namespace fdx

#endif
