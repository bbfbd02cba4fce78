#include "fdx/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace fdx::metrics {

cmat interference_covariance(const cmat& U_comb, const cmat& H_plus_C,
                             const cmat& G1V, const cmat& delta_cov, double sigma2) {
    cmat sig_cov = G1V * G1V.adjoint();
    if (delta_cov.size() > 0) sig_cov += delta_cov;
    cmat A = U_comb * H_plus_C;
    cmat W = A * sig_cov * A.adjoint() + sigma2 * (U_comb * U_comb.adjoint());
    // enforce exact Hermitian symmetry
    return 0.5 * (W + cmat(W.adjoint()));
}

double link_rate_eff(const cmat& A, const cmat& W) {
    const Eigen::Index d = A.rows();
    if (W.rows() != d || W.cols() != d) throw std::invalid_argument("link_rate: shape mismatch");
    // tiny floor keeps the inverse defined in noiseless diagnostic setups
    const double eps = std::max(1e-30, 1e-15 * std::abs(W.trace()));
    cmat Wr = W + eps * cmat::Identity(d, d);
    cmat M = cmat::Identity(d, d) + A * A.adjoint() * Wr.inverse();
    cd det = M.determinant();
    return std::log2(std::max(1.0, std::abs(det)));
}

double link_rate(const cmat& U_comb, const cmat& H, const rvec& g1_diag,
                 const cmat& V, const cmat& W) {
    cmat A = U_comb * H * g1_diag.asDiagonal() * V;
    return link_rate_eff(A, W);
}

BerResult ber_count(const std::vector<uint8_t>& tx_bits, const std::vector<uint8_t>& rx_bits) {
    if (tx_bits.size() != rx_bits.size()) throw std::invalid_argument("ber_count: length mismatch");
    BerResult r;
    r.total = static_cast<long long>(tx_bits.size());
    for (size_t i = 0; i < tx_bits.size(); ++i) {
        if (tx_bits[i] != rx_bits[i]) ++r.errors;
    }
    r.ber = r.total ? static_cast<double>(r.errors) / static_cast<double>(r.total) : 0.0;
    return r;
}

double saturation_probability(const std::vector<bool>& flags) {
    if (flags.empty()) throw std::invalid_argument("saturation_probability: no runs");
    long long n = 0;
    for (bool f : flags) n += f ? 1 : 0;
    return static_cast<double>(n) / static_cast<double>(flags.size());
}

}  // namespace fdx::metrics
