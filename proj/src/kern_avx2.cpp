// AVX2+FMA kernel variants. Lane-for-lane transliteration of kern_lanes.hpp;
// compiled with -mavx2 -mfma, reached only through the runtime dispatcher.
#include "risthz/kern.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "kern_lanes.hpp"

namespace risthz::kern::detail {

using namespace lanes;

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline __m256d exp4(__m256d x) {
    const __m256d shift = splat(kShift);
    const __m256d t = _mm256_fmadd_pd(x, splat(kLog2E), shift);
    const __m256d kd = _mm256_sub_pd(t, shift);
    __m256d r = _mm256_fmadd_pd(kd, splat(-kLn2Hi), x);
    r = _mm256_fmadd_pd(kd, splat(-kLn2Lo), r);
    __m256d p = splat(kExpC[12]);
    for (int i = 11; i >= 0; --i) p = _mm256_fmadd_pd(p, r, splat(kExpC[i]));
    const __m256i tb = _mm256_castpd_si256(t);
    const __m256i scale = _mm256_add_epi64(_mm256_slli_epi64(tb, 52),
                                           _mm256_castpd_si256(splat(1.0)));
    __m256d y = _mm256_mul_pd(p, _mm256_castsi256_pd(scale));
    const __m256d lo = _mm256_cmp_pd(x, splat(-708.0), _CMP_LT_OQ);
    const __m256d hi = _mm256_cmp_pd(x, splat(709.0), _CMP_GT_OQ);
    y = _mm256_andnot_pd(lo, y);
    y = _mm256_blendv_pd(y, splat(std::numeric_limits<double>::infinity()), hi);
    return y;
}

inline __m256d log4(__m256d x) {
    const __m256i b = _mm256_castpd_si256(x);
    const __m256i one_bits = _mm256_castpd_si256(splat(1.0));
    const __m256i mb = _mm256_or_si256(
        _mm256_and_si256(b, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll)), one_bits);
    __m256d m = _mm256_castsi256_pd(mb);
    const __m256d up = _mm256_cmp_pd(m, splat(kSqrt2), _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), up);
    __m256i e = _mm256_sub_epi64(_mm256_srli_epi64(b, 52), _mm256_set1_epi64x(1023));
    e = _mm256_sub_epi64(e, _mm256_castpd_si256(up));  // mask is all-ones = -1
    // exact int64 -> double for |e| < 2^51
    const __m256i magic = _mm256_set1_epi64x(0x4338000000000000ll);
    const __m256d ed = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_add_epi64(e, magic)), splat(kShift));
    const __m256d t = _mm256_div_pd(_mm256_sub_pd(m, splat(1.0)),
                                    _mm256_add_pd(m, splat(1.0)));
    const __m256d t2 = _mm256_mul_pd(t, t);
    __m256d p = splat(kLogP[7]);
    for (int i = 6; i >= 0; --i) p = _mm256_fmadd_pd(p, t2, splat(kLogP[i]));
    const __m256d lnm = _mm256_fmadd_pd(_mm256_mul_pd(t, t2), p,
                                        _mm256_mul_pd(splat(2.0), t));
    const __m256d hi = _mm256_mul_pd(ed, splat(kLn2Hi));
    return _mm256_add_pd(hi, _mm256_fmadd_pd(ed, splat(kLn2Lo), lnm));
}

inline void sincos4(__m256d u, __m256d& s_out, __m256d& c_out) {
    const __m256d shift = splat(kShift);
    const __m256d t = _mm256_fmadd_pd(u, splat(4.0), shift);
    const __m256d qd = _mm256_sub_pd(t, shift);
    const __m256i q = _mm256_and_si256(_mm256_castpd_si256(t), _mm256_set1_epi64x(3));
    const __m256d r = _mm256_fmadd_pd(qd, splat(-0.25), u);
    const __m256d x = _mm256_mul_pd(r, splat(kTwoPi));
    const __m256d x2 = _mm256_mul_pd(x, x);
    __m256d sp = splat(kSinP[6]);
    for (int i = 5; i >= 0; --i) sp = _mm256_fmadd_pd(sp, x2, splat(kSinP[i]));
    const __m256d s0 = _mm256_fmadd_pd(_mm256_mul_pd(x, x2), sp, x);
    __m256d cp = splat(kCosP[7]);
    for (int i = 6; i >= 0; --i) cp = _mm256_fmadd_pd(cp, x2, splat(kCosP[i]));
    const __m256d c0 = _mm256_fmadd_pd(x2, cp, splat(1.0));
    const __m256d swap = _mm256_castsi256_pd(_mm256_sub_epi64(
        _mm256_setzero_si256(), _mm256_and_si256(q, _mm256_set1_epi64x(1))));
    const __m256d ss = _mm256_blendv_pd(s0, c0, swap);
    const __m256d cc = _mm256_blendv_pd(c0, s0, swap);
    const __m256i sflip = _mm256_slli_epi64(
        _mm256_and_si256(_mm256_srli_epi64(q, 1), _mm256_set1_epi64x(1)), 63);
    const __m256i cflip = _mm256_slli_epi64(
        _mm256_and_si256(_mm256_srli_epi64(_mm256_add_epi64(q, _mm256_set1_epi64x(1)), 1),
                         _mm256_set1_epi64x(1)), 63);
    s_out = _mm256_castsi256_pd(_mm256_xor_si256(_mm256_castpd_si256(ss), sflip));
    c_out = _mm256_castsi256_pd(_mm256_xor_si256(_mm256_castpd_si256(cc), cflip));
}

inline __m256d log2_1p4(__m256d x) {
    return _mm256_mul_pd(log4(_mm256_add_pd(splat(1.0), x)), splat(kInvLn2));
}

}  // namespace

void exp_v_avx2(const double* x, double* y, std::size_t n) noexcept {
    const std::size_t main = n & ~std::size_t(3);
    for (std::size_t i = 0; i < main; i += 4)
        _mm256_storeu_pd(y + i, exp4(_mm256_loadu_pd(x + i)));
    for (std::size_t i = main; i < n; ++i) y[i] = exp_lane(x[i]);
}

void log_v_avx2(const double* x, double* y, std::size_t n) noexcept {
    const std::size_t main = n & ~std::size_t(3);
    for (std::size_t i = 0; i < main; i += 4)
        _mm256_storeu_pd(y + i, log4(_mm256_loadu_pd(x + i)));
    for (std::size_t i = main; i < n; ++i) y[i] = log_lane(x[i]);
}

void sincos_turns_v_avx2(const double* u, double* s, double* c, std::size_t n) noexcept {
    const std::size_t main = n & ~std::size_t(3);
    for (std::size_t i = 0; i < main; i += 4) {
        __m256d sv, cv;
        sincos4(_mm256_loadu_pd(u + i), sv, cv);
        _mm256_storeu_pd(s + i, sv);
        _mm256_storeu_pd(c + i, cv);
    }
    for (std::size_t i = main; i < n; ++i) sincos_turns_lane(u[i], s[i], c[i]);
}

std::size_t count_le_v_avx2(const double* x, std::size_t n, double t) noexcept {
    const __m256d tv = splat(t);
    std::size_t k = 0;
    const std::size_t main = n & ~std::size_t(3);
    for (std::size_t i = 0; i < main; i += 4) {
        const __m256d m = _mm256_cmp_pd(_mm256_loadu_pd(x + i), tv, _CMP_LE_OQ);
        k += static_cast<std::size_t>(_mm_popcnt_u32(
            static_cast<unsigned>(_mm256_movemask_pd(m))));
    }
    for (std::size_t i = main; i < n; ++i) k += (x[i] <= t) ? 1u : 0u;
    return k;
}

double sum_log2_1p_v_avx2(const double* x, std::size_t n) noexcept {
    __m256d vacc = _mm256_setzero_pd();
    const std::size_t main = n & ~std::size_t(3);
    for (std::size_t i = 0; i < main; i += 4)
        vacc = _mm256_add_pd(vacc, log2_1p4(_mm256_loadu_pd(x + i)));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t i = main; i < n; ++i) acc[i - main] += log2_1p_lane(x[i]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace risthz::kern::detail

#else

namespace risthz::kern::detail {
// Non-x86 fallbacks; the dispatcher never selects these when AVX2 is absent.
void exp_v_avx2(const double* x, double* y, std::size_t n) noexcept { exp_v_scalar(x, y, n); }
void log_v_avx2(const double* x, double* y, std::size_t n) noexcept { log_v_scalar(x, y, n); }
void sincos_turns_v_avx2(const double* u, double* s, double* c, std::size_t n) noexcept {
    sincos_turns_v_scalar(u, s, c, n);
}
std::size_t count_le_v_avx2(const double* x, std::size_t n, double t) noexcept {
    return count_le_v_scalar(x, n, t);
}
double sum_log2_1p_v_avx2(const double* x, std::size_t n) noexcept {
    return sum_log2_1p_v_scalar(x, n);
}
}  // namespace risthz::kern::detail

#endif
