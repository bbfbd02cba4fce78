#include "fdx/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "fdx/rng.hpp"

namespace fdx::channel {

cmat rayleigh_channel(int m, int n, double pathloss_db, uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("rayleigh_channel: bad dimensions");
    Rng rng(seed);
    const double amp = std::pow(10.0, -pathloss_db / 20.0);
    cmat H(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) H(i, j) = amp * rng.cgauss();
    return H;
}

cmat rician_channel(int m, int n, double k_factor_db, double pathloss_db, uint64_t seed) {
    if (m < 1 || n < 1) throw std::invalid_argument("rician_channel: bad dimensions");
    const double amp = std::pow(10.0, -pathloss_db / 20.0);
    cmat los(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) los(i, j) = std::exp(cd(0.0, M_PI * (i + j) / 4.0));

    if (std::isinf(k_factor_db) && k_factor_db > 0) return amp * los;

    Rng rng(seed);
    cmat scatter(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) scatter(i, j) = rng.cgauss();

    if (std::isinf(k_factor_db)) return amp * scatter;  // -inf: Rayleigh
    const double K = std::pow(10.0, k_factor_db / 10.0);
    return amp * (std::sqrt(K / (K + 1.0)) * los + std::sqrt(1.0 / (K + 1.0)) * scatter);
}

cmat estimate_channel(const cmat& H_true, double pilot_power, int pilot_len,
                      double noise_var, uint64_t seed) {
    const int m = static_cast<int>(H_true.rows());
    const int n = static_cast<int>(H_true.cols());
    if (pilot_len < n) throw std::invalid_argument("estimate_channel: pilot_len < n");
    if (!(pilot_power > 0.0)) throw std::invalid_argument("estimate_channel: pilot_power <= 0");

    // n rows of the pilot_len-point DFT matrix, per-antenna power pilot_power/n.
    const double amp = std::sqrt(pilot_power / n);
    cmat P(n, pilot_len);
    for (int a = 0; a < n; ++a)
        for (int l = 0; l < pilot_len; ++l)
            P(a, l) = amp * std::exp(cd(0.0, -2.0 * M_PI * a * l / pilot_len));

    Rng rng(seed);
    cmat Y = H_true * P;
    if (noise_var > 0.0) {
        const double namp = std::sqrt(noise_var);
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < pilot_len; ++l) Y(i, l) += namp * rng.cgauss();
    }
    cmat Gram = P * P.adjoint();  // = pilot_power*pilot_len/n * I for n <= pilot_len
    return Y * P.adjoint() * Gram.inverse();
}

}  // namespace fdx::channel
