#include "fdx/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace fdx::beamforming {

DlPrecoder design_dl_precoder(const cmat& est_H_qk, const cmat& si_null_target,
                              int alpha, double si_weight) {
    const Eigen::Index n_tx = est_H_qk.cols();
    if (alpha < 1 || alpha > std::min(est_H_qk.rows(), n_tx)) {
        throw std::invalid_argument("design_dl_precoder: alpha out of range");
    }
    if (si_weight < 0.0 || si_weight > 1.0) {
        throw std::invalid_argument("design_dl_precoder: si_weight outside [0,1]");
    }

    auto dec = linalg::svd(est_H_qk);
    DlPrecoder out;
    out.F = dec.V.leftCols(alpha);

    // Projector onto the null space of si_null_target's rows.
    cmat proj = cmat::Identity(n_tx, n_tx);
    if (si_null_target.rows() > 0 && si_null_target.norm() > 0.0) {
        if (si_null_target.cols() != n_tx) {
            throw std::invalid_argument("design_dl_precoder: si_null_target shape mismatch");
        }
        auto sdec = linalg::svd(si_null_target);
        const double tol = 1e-12 * sdec.s(0);
        Eigen::Index r = 0;
        while (r < sdec.s.size() && sdec.s(r) > tol) ++r;
        if (r > 0) proj -= sdec.V.leftCols(r) * sdec.V.leftCols(r).adjoint();
    }

    out.V = out.F;
    for (Eigen::Index c = 0; c < out.V.cols(); ++c) {
        cvec f = out.F.col(c);
        cvec v = (1.0 - si_weight) * f + si_weight * (proj * f);
        double n = v.norm();
        if (n < 1e-12) {
            // Degenerate column (empty null space at w = 1): keep the DL-optimal
            // direction rather than emitting a zero column.
            v = f;
            n = v.norm();
        }
        out.V.col(c) = v / n;
    }
    return out;
}

cmat design_ul_precoder(const cmat& est_H_km, int d_m) {
    if (d_m < 1 || d_m > std::min(est_H_km.rows(), est_H_km.cols())) {
        throw std::invalid_argument("design_ul_precoder: d_m out of range");
    }
    if (est_H_km.cols() == 1) return cmat::Ones(1, 1);  // single-antenna UL node
    auto dec = linalg::svd(est_H_km);
    return dec.V.leftCols(d_m);
}

cmat design_dl_combiner(const cmat& est_H_qk, const cmat& F) {
    if (est_H_qk.cols() != F.rows()) {
        throw std::invalid_argument("design_dl_combiner: shape mismatch");
    }
    auto dec = linalg::svd(est_H_qk * F);
    return dec.U.leftCols(std::min<Eigen::Index>(F.cols(), dec.U.cols()));
}

cmat design_ul_combiner(const cmat& est_H_km, const cmat& V_m, double g1m,
                        const cmat& interference_cov, double sigma2) {
    const Eigen::Index m = est_H_km.rows();
    if (interference_cov.rows() != m || interference_cov.cols() != m) {
        throw std::invalid_argument("design_ul_combiner: covariance shape mismatch");
    }
    cmat cov = interference_cov + sigma2 * cmat::Identity(m, m);
    cmat mf = est_H_km * (g1m * V_m);
    cmat U = (cov.norm() > 0.0) ? cmat(cov.ldlt().solve(mf)) : mf;
    for (Eigen::Index c = 0; c < U.cols(); ++c) {
        double n = U.col(c).norm();
        if (n > 0.0) U.col(c) /= n;
    }
    return U;
}

rvec power_alloc(double p_total_mw, int n) {
    if (!(p_total_mw > 0.0) || n < 1) throw std::invalid_argument("power_alloc: bad input");
    return rvec::Constant(n, std::sqrt(p_total_mw / n));
}

}  // namespace fdx::beamforming
