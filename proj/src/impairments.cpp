#include "fdx/impairments.hpp"

#include <cmath>
#include <stdexcept>

namespace fdx::impairments {

std::pair<cd, cd> iq_coeffs(double g, double theta) {
    if (!(g > 0.0)) throw std::invalid_argument("iq_coeffs: gain imbalance must be > 0");
    cd mu1 = (1.0 + g * std::exp(cd(0.0, -theta))) / 2.0;
    cd mu2 = (1.0 - g * std::exp(cd(0.0, theta))) / 2.0;
    return {mu1, mu2};
}

SixGains six_gains(cd mu1, cd mu2, double nu1, double nu3) {
    SixGains s;
    const double a1 = std::norm(mu1);  // |mu1|^2
    const double a2 = std::norm(mu2);
    s.g1 = mu1 * nu1;
    s.g2 = mu2 * nu1;
    s.g3 = mu1 * mu1 * std::conj(mu2) * nu3;
    s.g4 = (2.0 * a1 * mu1 + a2 * mu1) * nu3;
    s.g5 = (2.0 * a1 * mu2 + a2 * mu2) * nu3;
    s.g6 = std::conj(mu1) * mu2 * mu2 * nu3;
    return s;
}

double ImpairmentProfile::irr_db() const {
    if (mu2 == cd(0.0, 0.0)) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(std::abs(mu1) / std::abs(mu2));
}

ImpairmentProfile profile_from_targets(double irr_db, double nu1, double iip3_dbm,
                                       int n_chains) {
    if (!(irr_db > 0.0)) throw std::invalid_argument("profile_from_targets: IRR must be > 0 dB");
    if (!(nu1 > 0.0)) throw std::invalid_argument("profile_from_targets: nu1 must be > 0");
    if (n_chains < 1) throw std::invalid_argument("profile_from_targets: need >= 1 chain");

    ImpairmentProfile p;
    p.theta = 0.0;
    if (std::isinf(irr_db)) {
        p.g = 1.0;  // mu2 = 0
    } else {
        // With theta = 0: mu1/mu2 = (1+g)/(1-g), so sqrt(IRR) = (1+g)/(1-g).
        const double r = std::pow(10.0, irr_db / 20.0);
        p.g = (r - 1.0) / (r + 1.0);
        if (p.g <= 0.0) p.g = 1e-15;
    }
    if (std::isinf(irr_db)) {
        p.mu1 = cd(1.0, 0.0);
        p.mu2 = cd(0.0, 0.0);
    } else {
        std::tie(p.mu1, p.mu2) = iq_coeffs(p.g, p.theta);
    }
    p.nu1 = nu1;
    p.iip3_dbm = iip3_dbm;
    p.nu3 = std::isinf(iip3_dbm) ? 0.0 : nu1 / std::pow(10.0, iip3_dbm / 10.0);
    p.n_chains = n_chains;
    p.gains.assign(static_cast<size_t>(n_chains), six_gains(p.mu1, p.mu2, p.nu1, p.nu3));
    return p;
}

cmat basis_expand(const cmat& X, int blocks) {
    if (blocks < 1 || blocks > 6) throw std::invalid_argument("basis_expand: blocks in [1,6]");
    const Eigen::Index n = X.rows();
    const Eigen::Index L = X.cols();
    cmat psi(blocks * n, L);
    const cmat Xc = X.conjugate();
    psi.topRows(n) = X;
    if (blocks >= 2) psi.middleRows(n, n) = Xc;
    if (blocks >= 3) psi.middleRows(2 * n, n) = X.cwiseProduct(X).cwiseProduct(X);
    if (blocks >= 4) psi.middleRows(3 * n, n) = X.cwiseProduct(X).cwiseProduct(Xc);
    if (blocks >= 5) psi.middleRows(4 * n, n) = X.cwiseProduct(Xc).cwiseProduct(Xc);
    if (blocks >= 6) psi.middleRows(5 * n, n) = Xc.cwiseProduct(Xc).cwiseProduct(Xc);
    return psi;
}

cmat gain_matrix(const ImpairmentProfile& profile) {
    const int n = profile.n_chains;
    cmat G = cmat::Zero(n, 6 * n);
    for (int i = 0; i < n; ++i) {
        const SixGains& g = profile.gains[static_cast<size_t>(i)];
        G(i, i) = g.g1;
        G(i, n + i) = g.g2;
        G(i, 2 * n + i) = g.g3;
        G(i, 3 * n + i) = g.g4;
        G(i, 4 * n + i) = g.g5;
        G(i, 5 * n + i) = g.g6;
    }
    return G;
}

cmat tx_front_end(const cmat& X, const ImpairmentProfile& profile) {
    if (X.rows() != profile.n_chains) {
        throw std::invalid_argument("tx_front_end: chain count mismatch");
    }
    return gain_matrix(profile) * basis_expand(X, 6);
}

}  // namespace fdx::impairments
