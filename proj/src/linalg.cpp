#include "fdx/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace fdx::linalg {

void require_finite(const cmat& A, const char* what) {
    if (!A.allFinite()) {
        throw std::invalid_argument(std::string(what) + " contains non-finite entries");
    }
}

SvdResult svd(const cmat& A) {
    if (A.size() == 0) throw std::invalid_argument("svd: empty matrix");
    require_finite(A, "svd input");
    Eigen::JacobiSVD<cmat> dec(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out{dec.matrixU(), dec.singularValues(), dec.matrixV()};
    const double smax = out.s.size() ? out.s(0) : 0.0;
    // Fix the overall phase of each singular pair for reproducibility.
    for (Eigen::Index j = 0; j < out.V.cols(); ++j) {
        cd pivot(0.0, 0.0);
        for (Eigen::Index i = 0; i < out.V.rows(); ++i) {
            if (std::abs(out.V(i, j)) > 1e-12 * std::max(1.0, smax)) {
                pivot = out.V(i, j);
                break;
            }
        }
        if (pivot == cd(0.0, 0.0)) continue;
        cd phase = std::conj(pivot) / std::abs(pivot);
        out.V.col(j) *= phase;
        if (j < out.U.cols()) out.U.col(j) *= phase;
    }
    return out;
}

RqFactorization rq_decompose(const cmat& Psi) {
    const Eigen::Index p = Psi.rows();
    const Eigen::Index L = Psi.cols();
    if (p > L) throw std::invalid_argument("rq_decompose: need rows <= cols");
    require_finite(Psi, "rq_decompose input");

    RqFactorization f;
    f.R = cmat::Identity(p, p);
    f.Q = cmat::Zero(p, L);

    double max_row_norm = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) {
        max_row_norm = std::max(max_row_norm, Psi.row(i).norm());
    }
    const double dep_tol = 1e-12 * max_row_norm;

    std::vector<double> qnorm2(static_cast<size_t>(p), 0.0);
    for (Eigen::Index i = 0; i < p; ++i) {
        Eigen::RowVectorXcd q = Psi.row(i);
        // Two sweeps: plain Gram-Schmidt loses orthogonality on the strongly
        // correlated polynomial bases this feeds on.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (Eigen::Index j = 0; j < i; ++j) {
                if (qnorm2[static_cast<size_t>(j)] == 0.0) continue;
                cd c = (q * f.Q.row(j).adjoint())(0, 0) / qnorm2[static_cast<size_t>(j)];
                q -= c * f.Q.row(j);
                f.R(i, j) += c;
            }
        }
        if (q.norm() < dep_tol) {
            f.rank.dependent_rows.push_back(static_cast<int>(i));
            // Q row stays zero; R keeps the projection coefficients so that
            // R*Q still reconstructs the dependent row.
        } else {
            f.Q.row(i) = q;
            qnorm2[static_cast<size_t>(i)] = q.squaredNorm();
        }
    }
    return f;
}

cmat back_substitute(const cmat& Omega, const cmat& R) {
    const Eigen::Index p = R.rows();
    if (R.cols() != p) throw std::invalid_argument("back_substitute: R must be square");
    if (Omega.cols() != p) throw std::invalid_argument("back_substitute: shape mismatch");
    cmat Theta = Omega;
    // Omega = Theta * R with R lower unit-triangular: column p-1 is free,
    // earlier columns pick up contributions from later ones.
    for (Eigen::Index j = p - 1; j >= 0; --j) {
        for (Eigen::Index i = j + 1; i < p; ++i) {
            Theta.col(j) -= R(i, j) * Theta.col(i);
        }
    }
    return Theta;
}

cmat row_ls_solve(const cmat& J, const cmat& Q) {
    if (J.cols() != Q.cols()) throw std::invalid_argument("row_ls_solve: shape mismatch");
    require_finite(J, "row_ls_solve J");
    cmat Omega = cmat::Zero(J.rows(), Q.rows());
    for (Eigen::Index i = 0; i < Q.rows(); ++i) {
        double n2 = Q.row(i).squaredNorm();
        if (n2 == 0.0) continue;  // zeroed rank-deficient row
        Omega.col(i) = (J * Q.row(i).adjoint()) / n2;
    }
    return Omega;
}

}  // namespace fdx::linalg
