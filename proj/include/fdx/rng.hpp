#ifndef FDX_RNG_HPP
#define FDX_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace fdx {

// Seeded generator with explicit Gaussian sampling. std::normal_distribution
// is implementation-defined, so Box-Muller is done by hand to keep results
// byte-identical across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() {  // (0, 1]
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    // Circularly-symmetric complex Gaussian, unit variance (E|z|^2 = 1).
    std::complex<double> cgauss() {
        return {gauss() * M_SQRT1_2, gauss() * M_SQRT1_2};
    }

    uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// splitmix64-style mixing for deriving independent sub-stream seeds.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace fdx

#endif
