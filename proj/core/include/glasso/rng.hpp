#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace glasso {

// Seedable, portable stream of uniform and normal variates.
//
// mt19937_64 output is specified bit-exactly by the C++ standard, but the
// standard distributions are implementation-defined, so the mappings to
// doubles are fixed here: generated problems and samples reproduce
// bit-identically across platforms from (kind, n, seed) alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; the second variate of each pair is cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = kTwoPi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static constexpr double kTwoPi = 6.283185307179586476925286766559;
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace glasso
