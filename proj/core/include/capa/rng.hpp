#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace capa {

/// Philox4x32-10 counter-based generator. A stream is addressed by
/// (seed, stream index); draws within a stream advance a 64-bit block
/// counter. Identical (seed, stream) pairs produce identical draws
/// regardless of how streams are scheduled across workers.
class CounterRng {
   public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            block_ = philox(counter_++);
            pos_ = 0;
        }
        return block_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    /// Uniform on the open interval (0, 1); 53-bit resolution.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal pair via Box-Muller (explicit arithmetic keeps the
    /// draw sequence implementation-independent).
    std::array<double, 2> normal_pair() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    /// Circularly-symmetric complex Gaussian CN(0, 1).
    std::complex<double> complex_gaussian() {
        const auto [x, y] = normal_pair();
        return {x * std::numbers::sqrt2 / 2.0, y * std::numbers::sqrt2 / 2.0};
    }

   private:
    static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) >> 32);
    }
    static std::uint32_t mullo(std::uint32_t a, std::uint32_t b) {
        return a * b;
    }

    std::array<std::uint32_t, 4> philox(std::uint64_t block) const {
        constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
        constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
        std::array<std::uint32_t, 4> x{static_cast<std::uint32_t>(block),
                                       static_cast<std::uint32_t>(block >> 32),
                                       stream_lo_, stream_hi_};
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            const std::uint32_t hi0 = mulhi(kM0, x[0]), lo0 = mullo(kM0, x[0]);
            const std::uint32_t hi1 = mulhi(kM1, x[2]), lo1 = mullo(kM1, x[2]);
            x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
            k0 += kW0;
            k1 += kW1;
        }
        return x;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;
};

}  // namespace capa
