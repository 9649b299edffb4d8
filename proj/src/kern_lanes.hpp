// Per-lane algorithms and constants shared by the scalar and AVX2 kernel
// builds. The AVX2 file transliterates these step by step; any change here
// must be mirrored there or the bit-equality tests fail.
#ifndef RISTHZ_KERN_LANES_HPP
#define RISTHZ_KERN_LANES_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace risthz::kern::lanes {

// round-to-nearest shifter: adding then subtracting leaves the integer in the
// low mantissa bits
inline constexpr double kShift = 6755399441055744.0;  // 1.5 * 2^52

inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;  // 42 bits
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kInvLn2 = 1.4426950408889634074;
inline constexpr double kTwoPi = 6.2831853071795864769;
inline constexpr double kSqrt2 = 1.4142135623730951;

// exp(r) on |r| <= ln2/2, Taylor through r^12
inline constexpr double kExpC[13] = {
    1.0, 1.0, 0.5,
    1.0 / 6, 1.0 / 24, 1.0 / 120, 1.0 / 720, 1.0 / 5040, 1.0 / 40320,
    1.0 / 362880, 1.0 / 3628800, 1.0 / 39916800, 1.0 / 479001600};

// atanh series for log: ln((1+t)/(1-t)) = 2t + t^3*P(t^2)
inline constexpr double kLogP[8] = {
    2.0 / 3, 2.0 / 5, 2.0 / 7, 2.0 / 9, 2.0 / 11, 2.0 / 13, 2.0 / 15, 2.0 / 17};

// sin(x) = x + x^3 * S(x^2), cos(x) = 1 + x^2 * C(x^2) on |x| <= pi/4
inline constexpr double kSinP[7] = {
    -1.0 / 6, 1.0 / 120, -1.0 / 5040, 1.0 / 362880,
    -1.0 / 39916800, 1.0 / 6227020800.0, -1.0 / 1307674368000.0};
inline constexpr double kCosP[8] = {
    -0.5, 1.0 / 24, -1.0 / 720, 1.0 / 40320, -1.0 / 3628800,
    1.0 / 479001600.0, -1.0 / 87178291200.0, 1.0 / 20922789888000.0};

inline std::uint64_t bits(double x) noexcept { return std::bit_cast<std::uint64_t>(x); }
inline double from_bits(std::uint64_t b) noexcept { return std::bit_cast<double>(b); }

inline double exp_lane(double x) noexcept {
    const double t = std::fma(x, kLog2E, kShift);
    const double kd = t - kShift;
    double r = std::fma(kd, -kLn2Hi, x);
    r = std::fma(kd, -kLn2Lo, r);
    double p = kExpC[12];
    for (int i = 11; i >= 0; --i) p = std::fma(p, r, kExpC[i]);
    const std::uint64_t scale = (bits(t) << 52) + bits(1.0);
    double y = p * from_bits(scale);
    y = (x < -708.0) ? 0.0 : y;
    y = (x > 709.0) ? std::numeric_limits<double>::infinity() : y;
    return y;
}

inline double log_lane(double x) noexcept {
    const std::uint64_t b = bits(x);
    const std::uint64_t mb = (b & 0x000FFFFFFFFFFFFFull) | bits(1.0);
    double m = from_bits(mb);
    const bool up = m >= kSqrt2;
    m = up ? 0.5 * m : m;
    const std::int64_t e = static_cast<std::int64_t>(b >> 52) - 1023 + (up ? 1 : 0);
    const double ed = static_cast<double>(e);
    const double t = (m - 1.0) / (m + 1.0);
    const double t2 = t * t;
    double p = kLogP[7];
    for (int i = 6; i >= 0; --i) p = std::fma(p, t2, kLogP[i]);
    const double lnm = std::fma(t * t2, p, 2.0 * t);
    const double hi = ed * kLn2Hi;
    return hi + std::fma(ed, kLn2Lo, lnm);
}

inline void sincos_turns_lane(double u, double& s_out, double& c_out) noexcept {
    const double t = std::fma(u, 4.0, kShift);
    const double qd = t - kShift;
    const std::uint64_t q = bits(t) & 3u;
    const double r = std::fma(qd, -0.25, u);
    const double x = r * kTwoPi;
    const double x2 = x * x;
    double sp = kSinP[6];
    for (int i = 5; i >= 0; --i) sp = std::fma(sp, x2, kSinP[i]);
    const double s0 = std::fma(x * x2, sp, x);
    double cp = kCosP[7];
    for (int i = 6; i >= 0; --i) cp = std::fma(cp, x2, kCosP[i]);
    const double c0 = std::fma(x2, cp, 1.0);
    const bool swap = (q & 1u) != 0;
    const double ss = swap ? c0 : s0;
    const double cc = swap ? s0 : c0;
    const std::uint64_t sflip = (q >> 1) & 1u;             // q in {2,3}
    const std::uint64_t cflip = ((q + 1u) >> 1) & 1u;      // q in {1,2}
    s_out = from_bits(bits(ss) ^ (sflip << 63));
    c_out = from_bits(bits(cc) ^ (cflip << 63));
}

inline double log2_1p_lane(double x) noexcept {
    return log_lane(1.0 + x) * kInvLn2;
}

}  // namespace risthz::kern::lanes

#endif
