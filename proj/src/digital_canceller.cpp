#include "fdx/digital_canceller.hpp"

#include <cmath>
#include <stdexcept>

namespace fdx::digital_canceller {

cmat basis_for(const cmat& X, BasisKind kind) {
    return impairments::basis_expand(X, basis_blocks(kind));
}

ResidualSiModel estimate_residual(const cmat& J, const cmat& Psi, BasisKind kind) {
    if (Psi.cols() != J.cols()) throw std::invalid_argument("estimate_residual: sample count mismatch");
    if (Psi.cols() < Psi.rows()) throw std::invalid_argument("estimate_residual: too few samples");
    auto rq = linalg::rq_decompose(Psi);
    cmat Omega = linalg::row_ls_solve(J, rq.Q);
    ResidualSiModel model;
    model.H_breve = linalg::back_substitute(Omega, rq.R);
    model.kind = kind;
    model.rank = rq.rank;
    return model;
}

cmat cancel(const ResidualSiModel& model, const cmat& psi) {
    if (model.H_breve.cols() != psi.rows()) throw std::invalid_argument("cancel: basis shape mismatch");
    return -model.H_breve * psi;
}

rvec residual_after_digital(const cmat& J, const ResidualSiModel& model,
                            const cmat& psi, const cmat& ul_signal,
                            const cmat& noise) {
    cmat e = J + cancel(model, psi) - ul_signal - noise;
    rvec out(e.rows());
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        double p = e.row(i).squaredNorm() / static_cast<double>(e.cols());
        out(i) = (p > 0.0) ? 10.0 * std::log10(p) : -std::numeric_limits<double>::infinity();
    }
    return out;
}

cmat adc_quantize(const cmat& samples, int bits, double headroom_db) {
    if (bits < 1 || bits > 24) throw std::invalid_argument("adc_quantize: bad resolution");
    cmat out = samples;
    const double headroom = std::pow(10.0, headroom_db / 20.0);
    const double levels = std::pow(2.0, bits);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        double rms = std::sqrt(out.row(i).squaredNorm() / static_cast<double>(out.cols()));
        if (rms == 0.0) continue;
        const double fs = rms * headroom;
        const double step = 2.0 * fs / levels;
        auto q = [&](double v) {
            double n = std::floor(v / step) + 0.5;
            double lim = levels / 2.0 - 0.5;
            n = std::clamp(n, -lim, lim);
            return n * step;
        };
        for (Eigen::Index l = 0; l < out.cols(); ++l) {
            out(i, l) = cd(q(out(i, l).real()), q(out(i, l).imag()));
        }
    }
    return out;
}

}  // namespace digital_canceller
