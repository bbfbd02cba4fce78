#ifndef FDX_IMPAIRMENTS_HPP
#define FDX_IMPAIRMENTS_HPP

#include "fdx/linalg.hpp"

namespace fdx {
namespace impairments {

// Composite gains of the IQ-mixer + cubic-PA chain. The per-sample model is
//   x_pa = g1*x + g2*x* + g3*x^3 + g4*x^2 x* + g5*x (x*)^2 + g6*(x*)^3.
struct SixGains {
    cd g1, g2, g3, g4, g5, g6;
};

// IQ mixer coefficients from gain/phase imbalance:
//   mu1 = (1 + g e^{-j theta})/2,  mu2 = (1 - g e^{j theta})/2.
// Requires g > 0.
std::pair<cd, cd> iq_coeffs(double g, double theta);

// Exact composite-gain formulas from (mu1, mu2, nu1, nu3).
SixGains six_gains(cd mu1, cd mu2, double nu1, double nu3);

struct ImpairmentProfile {
    double g = 1.0;        // mixer gain imbalance (linear)
    double theta = 0.0;    // mixer phase imbalance (rad)
    cd mu1{1.0, 0.0};
    cd mu2{0.0, 0.0};
    double nu1 = 1.0;      // PA linear gain
    double iip3_dbm = std::numeric_limits<double>::infinity();
    double nu3 = 0.0;      // = nu1 / IIP3_linear^2
    int n_chains = 1;
    std::vector<SixGains> gains;  // one per TX chain, all identical

    double irr_db() const;  // 20*log10 |mu1/mu2|
};

// Builds a profile hitting an IRR target (zero phase imbalance), with
// nu3 derived from the input-referred IIP3 in dBm. Amplitudes are
// milliwatt-referred: IIP3_linear^2 = 10^(iip3_dbm/10). irr_db or iip3_dbm
// may be +inf for an ideal mixer / linear PA. All chains are identical.
ImpairmentProfile profile_from_targets(double irr_db, double nu1, double iip3_dbm,
                                       int n_chains);

// 6N x L stack of {X, X*, X^o3, X^o2.X*, X.(X*)^o2, (X*)^o3} (Hadamard
// powers). blocks < 6 truncates to the leading blocks (1 = linear only,
// 2 = widely linear). Block order is fixed everywhere.
cmat basis_expand(const cmat& X, int blocks = 6);

// N x 6N augmented gain matrix [G1 G2 ... G6], each block diagonal.
cmat gain_matrix(const ImpairmentProfile& profile);

// Impaired TX signal: Xtilde = gain_matrix(profile) * basis_expand(X).
cmat tx_front_end(const cmat& X, const ImpairmentProfile& profile);

}  // namespace impairments
}  // namespace fdx

#endif
