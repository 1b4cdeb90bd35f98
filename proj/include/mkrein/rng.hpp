#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mkrein/errors.hpp"

namespace mkrein {

// Philox-2x64 counter-based generator (10 rounds). Each (key, stream) pair
// yields an independent substream, so sample i of a Monte Carlo run can be
// bound to stream i and produced on any worker without shared state.
class PhiloxStream {
public:
    PhiloxStream(std::uint64_t key, std::uint64_t stream)
        : key_(key), stream_(stream) {}

    std::uint64_t next_u64() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        std::uint64_t c0 = block_++, c1 = stream_, k = key_;
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 prod =
                static_cast<unsigned __int128>(0xD2B74407B1CE6E93ull) * c0;
            const std::uint64_t lo = static_cast<std::uint64_t>(prod);
            const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
            c0 = hi ^ k ^ c1;
            c1 = lo;
            k += 0x9E3779B97F4A7C15ull;
        }
        spare_ = c1;
        have_spare_ = true;
        return c0;
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in (0,1]
    double next_open_double() { return 1.0 - next_double(); }

    double next_normal() {
        if (have_normal_) {
            have_normal_ = false;
            return normal_spare_;
        }
        const double u1 = next_open_double();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        normal_spare_ = radius * std::sin(angle);
        have_normal_ = true;
        return radius * std::cos(angle);
    }

    // Marsaglia-Tsang for shape >= 1; shapes below 1 use the boosting
    // identity G(a) = G(a+1) * U^(1/a) to avoid the accept-reject pathologies
    // of tiny shapes.
    double next_gamma(double shape) {
        if (!(shape > 0.0))
            throw InvalidArgument("gamma shape must be positive");
        if (shape < 1.0) {
            const double boost = std::pow(next_open_double(), 1.0 / shape);
            return next_gamma(shape + 1.0) * boost;
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_open_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
    double normal_spare_ = 0.0;
    bool have_normal_ = false;
};

} // namespace mkrein
