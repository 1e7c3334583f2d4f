#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace wn {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-replication seed: base seed XOR a 64-bit mix of the replication index,
// so serial and parallel sweeps draw identical streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    return seed ^ splitmix64(index);
}

// mt19937_64 stream with explicit samplers, so draws do not depend on the
// standard library's unspecified distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via the Marsaglia polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    // Student t with integer df, as normal / sqrt(chi2_nu / nu).
    double student_t(int nu) {
        if (nu < 3)
            throw std::invalid_argument("student_t: need nu >= 3 for finite variance");
        const double z = normal();
        double chi2 = 0.0;
        for (int i = 0; i < nu; ++i) {
            const double g = normal();
            chi2 += g * g;
        }
        return z / std::sqrt(chi2 / nu);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace wn
