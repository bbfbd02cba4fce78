#include "fdx/analog_canceller.hpp"

#include <cmath>
#include <stdexcept>

namespace fdx::analog_canceller {

namespace {
// round half away from zero
double round_away(double x) {
    return (x >= 0.0) ? std::floor(x + 0.5) : std::ceil(x - 0.5);
}
constexpr double kAttRangeDb = 60.0;
}  // namespace

TapMask tap_mask(int n_taps, int m, int n) {
    if (n_taps < 0 || n_taps > m * n) throw std::invalid_argument("tap_mask: n_taps out of range");
    TapMask mask = TapMask::Constant(m, n, false);
    int placed = 0;
    for (int j = 0; j < n && placed < n_taps; ++j)
        for (int i = 0; i < m && placed < n_taps; ++i, ++placed) mask(i, j) = true;
    return mask;
}

cmat configure(const cmat& est_H_kk, const TapMask& mask) {
    if (est_H_kk.rows() != mask.rows() || est_H_kk.cols() != mask.cols()) {
        throw std::invalid_argument("configure: mask shape mismatch");
    }
    cmat C = cmat::Zero(est_H_kk.rows(), est_H_kk.cols());
    for (Eigen::Index j = 0; j < C.cols(); ++j)
        for (Eigen::Index i = 0; i < C.rows(); ++i)
            if (mask(i, j)) C(i, j) = -est_H_kk(i, j);
    return C;
}

cmat quantize(const cmat& values, double att_step_db, double phase_step_deg) {
    if (!(att_step_db > 0.0) || !(phase_step_deg > 0.0)) {
        throw std::invalid_argument("quantize: steps must be positive");
    }
    const double ref = values.cwiseAbs().maxCoeff();
    if (ref == 0.0) return values;
    const double phase_step = phase_step_deg * M_PI / 180.0;

    cmat out = values;
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            cd v = out(i, j);
            if (v == cd(0.0, 0.0)) continue;
            double att_db = -20.0 * std::log10(std::abs(v) / ref);
            if (att_db > kAttRangeDb) {
                out(i, j) = cd(0.0, 0.0);
                continue;
            }
            double q_att = round_away(att_db / att_step_db) * att_step_db;
            double mag = ref * std::pow(10.0, -q_att / 20.0);
            double q_ph = round_away(std::arg(v) / phase_step) * phase_step;
            out(i, j) = std::polar(mag, q_ph);
        }
    }
    return out;
}

cmat apply(const cmat& C, const cmat& x_tilde) {
    if (C.cols() != x_tilde.rows()) throw std::invalid_argument("apply: shape mismatch");
    return C * x_tilde;
}

SaturationReport check_saturation(const cmat& residual, double lambda_a_dbm) {
    if (residual.cols() < 1) throw std::invalid_argument("check_saturation: no samples");
    SaturationReport rep;
    rep.chain_dbm.resize(residual.rows());
    const double lambda_mw = std::pow(10.0, lambda_a_dbm / 10.0);
    for (Eigen::Index i = 0; i < residual.rows(); ++i) {
        double p = residual.row(i).squaredNorm() / static_cast<double>(residual.cols());
        rep.chain_dbm(i) = (p > 0.0) ? 10.0 * std::log10(p)
                                     : -std::numeric_limits<double>::infinity();
        if (p > lambda_mw) rep.saturated = true;
    }
    return rep;
}

}  // namespace fdx::analog_canceller
