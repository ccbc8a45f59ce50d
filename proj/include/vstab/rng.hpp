#pragma once

#include <cstdint>
#include <random>
#include <vector>

// Seeded randomness with fully pinned-down output. std::mt19937_64 is
// specified bit-for-bit by the standard; the distributions below are our
// own because the standard library's are implementation-defined.

namespace vstab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic sub-seed for stream `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    // [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Box-Muller; consumes two uniforms per pair, caches the second value.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

    std::vector<double> unit_vector(int n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (;;) {
            double norm2 = 0.0;
            for (auto& c : v) {
                c = gaussian();
                norm2 += c * c;
            }
            if (norm2 > 1e-24) {
                double inv = 1.0 / std::sqrt(norm2);
                for (auto& c : v) c *= inv;
                return v;
            }
        }
    }

    // Uniform in the closed unit ball: random direction scaled by U^(1/n).
    std::vector<double> ball_point(int n) {
        std::vector<double> v = unit_vector(n);
        double radius = std::pow(uniform01(), 1.0 / static_cast<double>(n));
        for (auto& c : v) c *= radius;
        return v;
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace vstab
