#ifndef FDX_WAVEFORM_HPP
#define FDX_WAVEFORM_HPP

#include <cstdint>
#include <vector>

#include "fdx/linalg.hpp"

namespace fdx {
namespace waveform {

struct OfdmNumerology {
    int n_subcarriers = 256;
    int n_data_subcarriers = 234;
    int cp_len = 64;
    double bandwidth_hz = 1.4e6;

    int symbol_len() const { return n_subcarriers + cp_len; }
    // FFT-bin indices of the data subcarriers: +-1..+-117 around DC
    // (DC and band edges null), in ascending bin order.
    std::vector<int> data_bins() const;
};

// Gray-mapped 16-QAM, unit average constellation power. Two bits per axis,
// mapped 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3 (scaled by 1/sqrt(10));
// bits [b0 b1 b2 b3] give I from b0b1 and Q from b2b3.
cvec qam16_mod(const std::vector<uint8_t>& bits);

// Hard minimum-distance decisions, inverse of qam16_mod on clean input.
std::vector<uint8_t> qam16_demod(const cvec& symbols);

// grid is n_data_subcarriers x n_symbols; output is the concatenated time
// signal, one symbol = CP (last cp_len samples) + 256 unitary-IDFT samples.
cvec ofdm_modulate(const cmat& grid, const OfdmNumerology& num = {});

// CP strip + unitary DFT; exact inverse of ofdm_modulate.
cmat ofdm_demodulate(const cvec& samples, const OfdmNumerology& num = {});

// 10*log10(max|x|^2 / mean|x|^2); rejects all-zero input.
double papr_db(const cvec& samples);

// Unitary radix-2 FFT helpers (n must be a power of two).
void fft_inplace(cvec& x, bool inverse);

}  // namespace waveform
}  // namespace fdx

#endif
