#include "fdx/waveform.hpp"

#include <cmath>
#include <stdexcept>

namespace fdx::waveform {

std::vector<int> OfdmNumerology::data_bins() const {
    const int half = n_data_subcarriers / 2;  // 117
    std::vector<int> bins;
    bins.reserve(static_cast<size_t>(n_data_subcarriers));
    for (int k = -half; k <= half; ++k) {
        if (k == 0) continue;
        bins.push_back((k + n_subcarriers) % n_subcarriers);
    }
    std::sort(bins.begin(), bins.end());
    return bins;
}

namespace {
constexpr double kQamScale = 0.31622776601683794;  // 1/sqrt(10)

double gray2_to_level(uint8_t b0, uint8_t b1) {
    // 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
    if (!b0) return b1 ? -1.0 : -3.0;
    return b1 ? 1.0 : 3.0;
}

void level_to_gray2(double v, uint8_t& b0, uint8_t& b1) {
    if (v < -2.0) { b0 = 0; b1 = 0; }
    else if (v < 0.0) { b0 = 0; b1 = 1; }
    else if (v < 2.0) { b0 = 1; b1 = 1; }
    else { b0 = 1; b1 = 0; }
}
}  // namespace

cvec qam16_mod(const std::vector<uint8_t>& bits) {
    if (bits.size() % 4 != 0) throw std::invalid_argument("qam16_mod: bit count not divisible by 4");
    cvec out(bits.size() / 4);
    for (size_t i = 0; i < out.size(); ++i) {
        double re = gray2_to_level(bits[4 * i], bits[4 * i + 1]);
        double im = gray2_to_level(bits[4 * i + 2], bits[4 * i + 3]);
        out(static_cast<Eigen::Index>(i)) = kQamScale * cd(re, im);
    }
    return out;
}

std::vector<uint8_t> qam16_demod(const cvec& symbols) {
    std::vector<uint8_t> bits(static_cast<size_t>(symbols.size()) * 4);
    for (Eigen::Index i = 0; i < symbols.size(); ++i) {
        cd s = symbols(i) / kQamScale;
        level_to_gray2(s.real(), bits[4 * i], bits[4 * i + 1]);
        level_to_gray2(s.imag(), bits[4 * i + 2], bits[4 * i + 3]);
    }
    return bits;
}

void fft_inplace(cvec& x, bool inverse) {
    const Eigen::Index n = x.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of two");
    // bit reversal
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x(i), x(j));
    }
    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const cd wl(std::cos(ang), std::sin(ang));
        for (Eigen::Index i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                cd u = x(i + k);
                cd v = x(i + k + len / 2) * w;
                x(i + k) = u + v;
                x(i + k + len / 2) = u - v;
                w *= wl;
            }
        }
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));  // unitary
    x *= scale;
}

cvec ofdm_modulate(const cmat& grid, const OfdmNumerology& num) {
    if (grid.rows() != num.n_data_subcarriers) {
        throw std::invalid_argument("ofdm_modulate: grid row count mismatch");
    }
    const auto bins = num.data_bins();
    const Eigen::Index n_sym = grid.cols();
    cvec out(num.symbol_len() * n_sym);
    for (Eigen::Index s = 0; s < n_sym; ++s) {
        cvec freq = cvec::Zero(num.n_subcarriers);
        for (size_t b = 0; b < bins.size(); ++b) freq(bins[b]) = grid(static_cast<Eigen::Index>(b), s);
        fft_inplace(freq, true);
        Eigen::Index off = s * num.symbol_len();
        out.segment(off, num.cp_len) = freq.tail(num.cp_len);
        out.segment(off + num.cp_len, num.n_subcarriers) = freq;
    }
    return out;
}

cmat ofdm_demodulate(const cvec& samples, const OfdmNumerology& num) {
    if (samples.size() % num.symbol_len() != 0) {
        throw std::invalid_argument("ofdm_demodulate: length not a multiple of the symbol length");
    }
    const auto bins = num.data_bins();
    const Eigen::Index n_sym = samples.size() / num.symbol_len();
    cmat grid(num.n_data_subcarriers, n_sym);
    for (Eigen::Index s = 0; s < n_sym; ++s) {
        cvec t = samples.segment(s * num.symbol_len() + num.cp_len, num.n_subcarriers);
        fft_inplace(t, false);
        for (size_t b = 0; b < bins.size(); ++b) grid(static_cast<Eigen::Index>(b), s) = t(bins[b]);
    }
    return grid;
}

double papr_db(const cvec& samples) {
    if (samples.size() == 0) throw std::invalid_argument("papr_db: empty input");
    const double mean = samples.squaredNorm() / static_cast<double>(samples.size());
    if (mean == 0.0) throw std::invalid_argument("papr_db: all-zero input");
    const double peak = samples.cwiseAbs2().maxCoeff();
    return 10.0 * std::log10(peak / mean);
}

}  // namespace fdx::waveform
