#ifndef RISTHZ_RNG_HPP
#define RISTHZ_RNG_HPP

#include <cmath>
#include <cstdint>
#include <cstddef>

namespace risthz::rng {

// Philox4x32-10 counter-based generator. Stream (seed, stream_id) is a pure
// function of its inputs, so worker i can use stream(seed, i) and parallel
// runs merge to the same result as serial ones.
class Philox {
public:
    Philox(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(stream_id)),
          ctr3_(static_cast<std::uint32_t>(stream_id >> 32)) {}

    std::uint32_t next_u32() noexcept {
        if (have_ == 0) {
            gen_block();
            have_ = 4;
        }
        return out_[4 - have_--];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1); safe under log().
    double next_open() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    void gen_block() noexcept {
        std::uint32_t c0 = static_cast<std::uint32_t>(n_);
        std::uint32_t c1 = static_cast<std::uint32_t>(n_ >> 32);
        std::uint32_t c2 = ctr2_, c3 = ctr3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        ++n_;
        for (int r = 0; r < 10; ++r) {
            const std::uint64_t p0 = 0xD2511F53ull * c0;
            const std::uint64_t p1 = 0xCD9E8D57ull * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out_[0] = c0; out_[1] = c1; out_[2] = c2; out_[3] = c3;
    }

    std::uint32_t key0_, key1_, ctr2_, ctr3_;
    std::uint64_t n_ = 0;
    std::uint32_t out_[4] = {};
    int have_ = 0;
};

// Distribution layer over one Philox stream.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept : eng_(seed, stream_id) {}

    double uniform() noexcept { return eng_.next_double(); }
    double uniform_open() noexcept { return eng_.next_open(); }
    std::uint64_t bits64() noexcept { return eng_.next_u64(); }

    double normal() noexcept {
        if (have_normal_) {
            have_normal_ = false;
            return cached_;
        }
        const double u = eng_.next_open();
        const double v = eng_.next_double();
        const double r = std::sqrt(-2.0 * std::log(u));
        cached_ = r * std::sin(6.283185307179586476925286766559 * v);
        have_normal_ = true;
        return r * std::cos(6.283185307179586476925286766559 * v);
    }

    // Gamma(shape, scale 1) via Marsaglia-Tsang; shape < 1 boosted by U^{1/shape}.
    double gamma(double shape) noexcept {
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(uniform_open(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            const double x = normal();
            const double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            const double v = t * t * t;
            const double u = uniform_open();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
        }
    }

private:
    Philox eng_;
    double cached_ = 0.0;
    bool have_normal_ = false;
};

}  // namespace risthz::rng

#endif
