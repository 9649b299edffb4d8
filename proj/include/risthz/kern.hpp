#ifndef RISTHZ_KERN_HPP
#define RISTHZ_KERN_HPP

#include <cstddef>
#include <string>

namespace risthz::kern {

// Batched arithmetic kernels for the sampler / Monte-Carlo inner loops.
// Every kernel has a scalar reference implementation and (on x86-64) an
// AVX2+FMA variant selected at runtime. The two paths execute the same
// per-lane operation sequence, so results are bit-identical regardless of
// which one is dispatched; the unit tests assert exact equality.
//
// Contracts (inputs are controlled by the callers):
//   exp_v        x in (-708, 709); flushes to 0 below, +inf above
//   log_v        x positive, finite, normal
//   sincos_turns u in [0, 1); computes sin(2*pi*u), cos(2*pi*u)
//   count_le_v   number of x[i] <= t
//   sum_log2_1p_v  sum of log2(1 + x[i]), x[i] >= 0, striped accumulation

enum class Level { scalar, avx2 };

Level active() noexcept;
void force(Level lvl);      // test hook; also honors env RISTHZ_SIMD=scalar|avx2
bool cpu_has_avx2() noexcept;
std::string level_name(Level lvl);

void exp_v(const double* x, double* y, std::size_t n) noexcept;
void log_v(const double* x, double* y, std::size_t n) noexcept;
void sincos_turns_v(const double* u, double* s, double* c, std::size_t n) noexcept;
std::size_t count_le_v(const double* x, std::size_t n, double t) noexcept;
double sum_log2_1p_v(const double* x, std::size_t n) noexcept;

namespace detail {
void exp_v_scalar(const double* x, double* y, std::size_t n) noexcept;
void log_v_scalar(const double* x, double* y, std::size_t n) noexcept;
void sincos_turns_v_scalar(const double* u, double* s, double* c, std::size_t n) noexcept;
std::size_t count_le_v_scalar(const double* x, std::size_t n, double t) noexcept;
double sum_log2_1p_v_scalar(const double* x, std::size_t n) noexcept;

void exp_v_avx2(const double* x, double* y, std::size_t n) noexcept;
void log_v_avx2(const double* x, double* y, std::size_t n) noexcept;
void sincos_turns_v_avx2(const double* u, double* s, double* c, std::size_t n) noexcept;
std::size_t count_le_v_avx2(const double* x, std::size_t n, double t) noexcept;
double sum_log2_1p_v_avx2(const double* x, std::size_t n) noexcept;
}  // namespace detail

}  // namespace risthz::kern

#endif
