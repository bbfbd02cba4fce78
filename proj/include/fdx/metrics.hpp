#ifndef FDX_METRICS_HPP
#define FDX_METRICS_HPP

#include <cstdint>
#include <vector>

#include "fdx/linalg.hpp"

namespace fdx {
namespace metrics {

// Interference-plus-noise covariance seen through a combiner (rows = streams):
//   W = U (H+C) (G1V (G1V)^H + Sigma_delta) (H+C)^H U^H + sigma2 U U^H.
// U_comb is d x M (the combiner applied as U_comb * y), delta_cov is the
// covariance of the TX distortion vector, sigma2 the per-antenna noise power.
cmat interference_covariance(const cmat& U_comb, const cmat& H_plus_C,
                             const cmat& G1V, const cmat& delta_cov, double sigma2);

// log2 det(I + A A^H W^{-1}) with effective channel A = U_comb H G1 V.
double link_rate(const cmat& U_comb, const cmat& H, const rvec& g1_diag,
                 const cmat& V, const cmat& W);

// Same, with a precomputed effective channel.
double link_rate_eff(const cmat& A, const cmat& W);

struct BerResult {
    long long errors = 0;
    long long total = 0;
    double ber = 0.0;
};

BerResult ber_count(const std::vector<uint8_t>& tx_bits, const std::vector<uint8_t>& rx_bits);

double saturation_probability(const std::vector<bool>& flags);

}  // namespace metrics
}  // namespace fdx

#endif
