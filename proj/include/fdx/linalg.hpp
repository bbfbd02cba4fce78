#ifndef FDX_LINALG_HPP
#define FDX_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace fdx {

using cd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

namespace linalg {

/// Throws std::invalid_argument if any entry of A is NaN/Inf.
void require_finite(const cmat& A, const char* what = "matrix");

struct SvdResult {
    cmat U;  // orthonormal columns
    rvec s;  // singular values, descending
    cmat V;  // orthonormal columns, A = U * s.asDiagonal() * V^H
};

// Thin SVD with a deterministic phase convention: the first component of
// each V column with magnitude above 1e-12*s_max is rotated real-positive.
SvdResult svd(const cmat& A);

struct RankReport {
    std::vector<int> dependent_rows;  // rows replaced by zero in Q
    bool full_rank() const { return dependent_rows.empty(); }
};

struct RqFactorization {
    cmat R;  // p x p, lower triangular, unit diagonal
    cmat Q;  // p x L, mutually orthogonal (not normalized) rows
    RankReport rank;
};

// Psi = R*Q via row-wise Gram-Schmidt (two orthogonalization sweeps).
// Rows that are numerically dependent on earlier rows (residual norm below
// 1e-12 times the largest input row norm) come back as zero rows of Q and
// are listed in the rank report. Requires rows(Psi) <= cols(Psi).
RqFactorization rq_decompose(const cmat& Psi);

// Solves Theta * R = Omega for Theta, R lower triangular with unit diagonal.
cmat back_substitute(const cmat& Omega, const cmat& R);

// Row-space least squares against orthogonal-row Q: minimizes |J - Omega*Q|_F.
// Omega = J Q^H (Q Q^H)^{-1}; columns matching zeroed Q rows are zero.
cmat row_ls_solve(const cmat& J, const cmat& Q);

}  // namespace linalg
}  // namespace fdx

#endif
