#include <doctest.h>

#include "fdx/linalg.hpp"
#include "fdx/rng.hpp"

using namespace fdx;

namespace {
cmat random_cmat(int m, int n, Rng& rng) {
    cmat A(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.cgauss();
    return A;
}
}  // namespace

TEST_CASE("svd identity and diagonal") {
    auto d = linalg::svd(cmat::Identity(2, 2));
    CHECK(d.s(0) == doctest::Approx(1.0));
    CHECK(d.s(1) == doctest::Approx(1.0));
    CHECK((d.U * d.s.asDiagonal() * d.V.adjoint() - cmat::Identity(2, 2)).norm() < 1e-12);

    cmat A = cmat::Zero(2, 2);
    A(0, 0) = 3.0;
    auto d2 = linalg::svd(A);
    CHECK(d2.s(0) == doctest::Approx(3.0));
    CHECK(d2.s(1) == doctest::Approx(0.0));
}

TEST_CASE("svd reconstructs a random complex matrix") {
    Rng rng(11);
    cmat A = random_cmat(4, 3, rng);
    auto d = linalg::svd(A);
    CHECK((A - d.U * d.s.asDiagonal() * d.V.adjoint()).norm() / A.norm() < 1e-10);
    CHECK((d.U.adjoint() * d.U - cmat::Identity(3, 3)).norm() < 1e-12);
    CHECK((d.V.adjoint() * d.V - cmat::Identity(3, 3)).norm() < 1e-12);
    // descending order
    for (int i = 1; i < d.s.size(); ++i) CHECK(d.s(i) <= d.s(i - 1));
}

TEST_CASE("svd rejects non-finite input") {
    cmat A = cmat::Zero(2, 2);
    A(1, 1) = cd(std::nan(""), 0.0);
    CHECK_THROWS_AS(linalg::svd(A), std::invalid_argument);
}

TEST_CASE("rq_decompose of already orthogonal rows is trivial") {
    cmat Psi = cmat::Zero(2, 4);
    Psi(0, 0) = cd(2.0, 0.0);
    Psi(1, 1) = cd(0.0, 3.0);
    auto f = linalg::rq_decompose(Psi);
    CHECK(f.rank.full_rank());
    CHECK((f.R - cmat::Identity(2, 2)).norm() < 1e-14);
    CHECK((f.Q - Psi).norm() < 1e-14);
}

TEST_CASE("rq_decompose flags an exactly collinear row") {
    Rng rng(5);
    cmat Psi(2, 4);
    Psi.row(0) = random_cmat(1, 4, rng);
    Psi.row(1) = 2.0 * Psi.row(0);
    auto f = linalg::rq_decompose(Psi);
    REQUIRE(f.rank.dependent_rows.size() == 1);
    CHECK(f.rank.dependent_rows[0] == 1);
    CHECK(f.Q.row(1).norm() == 0.0);
    // R still reconstructs the dependent row through the earlier Q rows
    CHECK((f.R * f.Q - Psi).norm() / Psi.norm() < 1e-12);
}

TEST_CASE("rq_decompose reconstruction and orthogonality on random fat input") {
    Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        cmat Psi = random_cmat(6, 100, rng);
        auto f = linalg::rq_decompose(Psi);
        CHECK(f.rank.full_rank());
        CHECK((f.R * f.Q - Psi).norm() / Psi.norm() < 1e-10);
        // unit diagonal, lower triangular
        for (int i = 0; i < 6; ++i) {
            CHECK(f.R(i, i) == cd(1.0, 0.0));
            for (int j = i + 1; j < 6; ++j) CHECK(f.R(i, j) == cd(0.0, 0.0));
        }
        // Q Q^H diagonal up to 1e-10 of its largest diagonal entry
        cmat G = f.Q * f.Q.adjoint();
        double dmax = G.diagonal().real().maxCoeff();
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                if (i != j) CHECK(std::abs(G(i, j)) < 1e-10 * dmax);
    }
}

TEST_CASE("rq_decompose requires fat input") {
    CHECK_THROWS_AS(linalg::rq_decompose(cmat::Zero(4, 3)), std::invalid_argument);
}

TEST_CASE("back_substitute identity and closed-form 2x2") {
    Rng rng(3);
    cmat Omega = random_cmat(3, 4, rng);
    CHECK((linalg::back_substitute(Omega, cmat::Identity(4, 4)) - Omega).norm() == 0.0);

    cd r(0.3, -0.8), a(1.0, 2.0), b(-0.5, 0.25);
    cmat R(2, 2);
    R << cd(1, 0), cd(0, 0), r, cd(1, 0);
    cmat Om(1, 2);
    Om << a, b;
    cmat Theta = linalg::back_substitute(Om, R);
    CHECK(std::abs(Theta(0, 0) - (a - b * r)) < 1e-14);
    CHECK(std::abs(Theta(0, 1) - b) < 1e-14);
}

TEST_CASE("back_substitute round trip") {
    Rng rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        cmat Theta0 = random_cmat(3, 6, rng);
        cmat R = cmat::Identity(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < i; ++j) R(i, j) = rng.cgauss();
        cmat Omega = Theta0 * R;
        CHECK((linalg::back_substitute(Omega, R) - Theta0).norm() / Theta0.norm() < 1e-10);
    }
}

TEST_CASE("row_ls_solve self-solve and scaling") {
    Rng rng(13);
    cmat Q = random_cmat(3, 10, rng);
    auto f = linalg::rq_decompose(Q);  // orthogonalize first
    CHECK((linalg::row_ls_solve(f.Q, f.Q) - cmat::Identity(3, 3)).norm() < 1e-12);

    // orthonormal rows
    cmat Qn = f.Q;
    for (int i = 0; i < 3; ++i) Qn.row(i) /= Qn.row(i).norm();
    cmat J = 2.0 * Qn;
    CHECK((linalg::row_ls_solve(J, Qn) - 2.0 * cmat::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("row_ls_solve noiseless recovery and optimality") {
    Rng rng(17);
    cmat Psi = random_cmat(4, 50, rng);
    cmat Q = linalg::rq_decompose(Psi).Q;
    cmat Omega0 = random_cmat(2, 4, rng);
    cmat J = Omega0 * Q;
    cmat Omega = linalg::row_ls_solve(J, Q);
    CHECK((Omega - Omega0).norm() / Omega0.norm() < 1e-10);

    // perturbing the solution never decreases the residual
    J += 0.1 * random_cmat(2, 50, rng);  // make the problem inconsistent
    Omega = linalg::row_ls_solve(J, Q);
    double base = (J - Omega * Q).norm();
    for (int p = 0; p < 10; ++p) {
        cmat d = 1e-3 * Omega.norm() * random_cmat(2, 4, rng);
        CHECK((J - (Omega + d) * Q).norm() >= base);
    }
}

TEST_CASE("row_ls_solve zeroes columns for zeroed Q rows") {
    Rng rng(19);
    cmat Q = linalg::rq_decompose(random_cmat(3, 12, rng)).Q;
    Q.row(1).setZero();
    cmat J = random_cmat(2, 12, rng);
    cmat Omega = linalg::row_ls_solve(J, Q);
    CHECK(Omega.col(1).norm() == 0.0);
}
