#include "risthz/kern.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace risthz::kern {

namespace {

Level detect() {
    if (const char* env = std::getenv("RISTHZ_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Level::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Level::avx2;
    }
    return cpu_has_avx2() ? Level::avx2 : Level::scalar;
}

std::atomic<Level>& level_slot() {
    static std::atomic<Level> lvl{detect()};
    return lvl;
}

}  // namespace

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Level active() noexcept { return level_slot().load(std::memory_order_relaxed); }

void force(Level lvl) {
    if (lvl == Level::avx2 && !cpu_has_avx2()) lvl = Level::scalar;
    level_slot().store(lvl, std::memory_order_relaxed);
}

std::string level_name(Level lvl) {
    return lvl == Level::avx2 ? "avx2" : "scalar";
}

void exp_v(const double* x, double* y, std::size_t n) noexcept {
    active() == Level::avx2 ? detail::exp_v_avx2(x, y, n) : detail::exp_v_scalar(x, y, n);
}

void log_v(const double* x, double* y, std::size_t n) noexcept {
    active() == Level::avx2 ? detail::log_v_avx2(x, y, n) : detail::log_v_scalar(x, y, n);
}

void sincos_turns_v(const double* u, double* s, double* c, std::size_t n) noexcept {
    active() == Level::avx2 ? detail::sincos_turns_v_avx2(u, s, c, n)
                            : detail::sincos_turns_v_scalar(u, s, c, n);
}

std::size_t count_le_v(const double* x, std::size_t n, double t) noexcept {
    return active() == Level::avx2 ? detail::count_le_v_avx2(x, n, t)
                                   : detail::count_le_v_scalar(x, n, t);
}

double sum_log2_1p_v(const double* x, std::size_t n) noexcept {
    return active() == Level::avx2 ? detail::sum_log2_1p_v_avx2(x, n)
                                   : detail::sum_log2_1p_v_scalar(x, n);
}

}  // namespace risthz::kern
