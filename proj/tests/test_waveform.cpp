#include <doctest.h>

#include <cmath>

#include "fdx/metrics.hpp"
#include "fdx/rng.hpp"
#include "fdx/waveform.hpp"

using namespace fdx;
using namespace fdx::waveform;

namespace {
std::vector<uint8_t> random_bits(size_t n, Rng& rng) {
    std::vector<uint8_t> b(n);
    for (auto& x : b) x = static_cast<uint8_t>(rng.bits() & 1u);
    return b;
}

double qfunc(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Gray-coded 16-QAM nearest-neighbor BER approximation.
double qam16_ber_analytic(double esn0_db) {
    double esn0 = std::pow(10.0, esn0_db / 10.0);
    return 0.75 * qfunc(std::sqrt(esn0 / 5.0));
}
}  // namespace

TEST_CASE("data_bins layout") {
    OfdmNumerology num;
    auto bins = num.data_bins();
    REQUIRE(static_cast<int>(bins.size()) == 234);
    // no DC, symmetric +-1..+-117 (negative side wrapped to 256-117..255)
    for (int b : bins) CHECK(b != 0);
    for (int k = 1; k <= 117; ++k) {
        CHECK(std::count(bins.begin(), bins.end(), k) == 1);
        CHECK(std::count(bins.begin(), bins.end(), 256 - k) == 1);
    }
    CHECK(std::is_sorted(bins.begin(), bins.end()));
}

TEST_CASE("qam16 table, closure, and round trip") {
    const double s = 1.0 / std::sqrt(10.0);
    cvec one = qam16_mod({0, 0, 0, 0});
    CHECK(std::abs(one(0) - s * cd(-3.0, -3.0)) < 1e-15);
    cvec p = qam16_mod({1, 1, 1, 0});
    CHECK(std::abs(p(0) - s * cd(1.0, 3.0)) < 1e-15);

    // all 16 nibbles: distinct points, mean power exactly 1
    std::vector<uint8_t> bits;
    for (int v = 0; v < 16; ++v)
        for (int b = 3; b >= 0; --b) bits.push_back(static_cast<uint8_t>((v >> b) & 1));
    cvec pts = qam16_mod(bits);
    REQUIRE(pts.size() == 16);
    for (int i = 0; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j) CHECK(std::abs(pts(i) - pts(j)) > 1e-12);
    CHECK(pts.squaredNorm() / 16.0 == doctest::Approx(1.0).epsilon(1e-14));

    Rng rng(3);
    auto rb = random_bits(4000, rng);
    CHECK(qam16_demod(qam16_mod(rb)) == rb);

    CHECK_THROWS_AS(qam16_mod({0, 1, 0}), std::invalid_argument);
}

TEST_CASE("qam16_demod decision regions are stable to small perturbations") {
    Rng rng(5);
    auto bits = random_bits(400, rng);
    cvec sym = qam16_mod(bits);
    for (Eigen::Index i = 0; i < sym.size(); ++i) sym(i) += 1e-3 * rng.cgauss();
    CHECK(qam16_demod(sym) == bits);
}

TEST_CASE("qam16 AWGN BER tracks the analytic approximation") {
    // 1e5 symbols at Es/N0 = 20 dB (sparse-error regime; fixed seed)
    Rng rng(20252);
    auto bits = random_bits(400000, rng);
    cvec sym = qam16_mod(bits);
    double n0 = std::pow(10.0, -20.0 / 10.0);
    for (Eigen::Index i = 0; i < sym.size(); ++i) sym(i) += std::sqrt(n0) * rng.cgauss();
    auto r = metrics::ber_count(bits, qam16_demod(sym));
    double analytic = qam16_ber_analytic(20.0);
    CHECK(r.ber > 0.5 * analytic);
    CHECK(r.ber < 2.0 * analytic);
}

TEST_CASE("ofdm single tone and zero grid") {
    OfdmNumerology num;
    cmat grid = cmat::Zero(234, 1);
    grid(120, 0) = cd(1.0, 0.0);  // one active data subcarrier
    cvec t = ofdm_modulate(grid, num);
    REQUIRE(t.size() == 320);
    // complex exponential: constant modulus
    double m0 = std::abs(t(0));
    CHECK(m0 > 0.0);
    for (Eigen::Index i = 0; i < t.size(); ++i) CHECK(std::abs(std::abs(t(i)) - m0) < 1e-12);

    CHECK(ofdm_modulate(cmat::Zero(234, 3), num).norm() == 0.0);
    CHECK_THROWS_AS(ofdm_modulate(cmat::Zero(100, 1), num), std::invalid_argument);
}

TEST_CASE("ofdm round trip and loopback EVM") {
    OfdmNumerology num;
    Rng rng(9);
    cmat grid(234, 8);
    for (int i = 0; i < 234; ++i)
        for (int s = 0; s < 8; ++s) grid(i, s) = rng.cgauss();
    cvec t = ofdm_modulate(grid, num);
    cmat back = ofdm_demodulate(t, num);
    double evm_db = 20.0 * std::log10((back - grid).norm() / grid.norm());
    CHECK(evm_db < -100.0);

    cvec bad(321);
    bad.setZero();
    CHECK_THROWS_AS(ofdm_demodulate(bad, num), std::invalid_argument);
}

TEST_CASE("scaling the grid scales time-domain power exactly") {
    OfdmNumerology num;
    Rng rng(15);
    cmat grid(234, 2);
    for (int i = 0; i < 234; ++i)
        for (int s = 0; s < 2; ++s) grid(i, s) = rng.cgauss();
    double p1 = ofdm_modulate(grid, num).squaredNorm();
    double p2 = ofdm_modulate(cmat(2.5 * grid), num).squaredNorm();
    CHECK(p2 == doctest::Approx(6.25 * p1).epsilon(1e-12));
}

TEST_CASE("papr_db closed forms and OFDM range") {
    cvec cm(64);
    for (int i = 0; i < 64; ++i) cm(i) = std::exp(cd(0.0, 0.1 * i));
    CHECK(papr_db(cm) == doctest::Approx(0.0).epsilon(1e-12));

    cvec spike = cvec::Ones(100);
    spike(17) = cd(10.0, 0.0);
    double expect = 10.0 * std::log10(100.0 / ((99.0 + 100.0) / 100.0));
    CHECK(papr_db(spike) == doctest::Approx(expect).epsilon(1e-12));

    CHECK_THROWS_AS(papr_db(cvec::Zero(8)), std::invalid_argument);

    // 16-QAM OFDM, 200 symbols: typical PAPR 8-13 dB
    OfdmNumerology num;
    Rng rng(21);
    std::vector<uint8_t> bits = random_bits(234 * 200 * 4, rng);
    cvec sym = qam16_mod(bits);
    cmat grid = Eigen::Map<cmat>(sym.data(), 234, 200);
    double papr = papr_db(ofdm_modulate(grid, num));
    CHECK(papr > 8.0);
    CHECK(papr < 13.0);
}

TEST_CASE("fft is unitary and invertible") {
    Rng rng(33);
    cvec x(256);
    for (int i = 0; i < 256; ++i) x(i) = rng.cgauss();
    cvec y = x;
    fft_inplace(y, false);
    CHECK(y.squaredNorm() == doctest::Approx(x.squaredNorm()).epsilon(1e-12));
    fft_inplace(y, true);
    CHECK((y - x).norm() / x.norm() < 1e-12);

    cvec bad(3);
    CHECK_THROWS_AS(fft_inplace(bad, false), std::invalid_argument);
}
