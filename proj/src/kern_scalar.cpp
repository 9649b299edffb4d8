#include "risthz/kern.hpp"

#include "kern_lanes.hpp"

namespace risthz::kern::detail {

using namespace lanes;

void exp_v_scalar(const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] = exp_lane(x[i]);
}

void log_v_scalar(const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] = log_lane(x[i]);
}

void sincos_turns_v_scalar(const double* u, double* s, double* c, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) sincos_turns_lane(u[i], s[i], c[i]);
}

std::size_t count_le_v_scalar(const double* x, std::size_t n, double t) noexcept {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) k += (x[i] <= t) ? 1u : 0u;
    return k;
}

double sum_log2_1p_v_scalar(const double* x, std::size_t n) noexcept {
    // 4-stripe accumulation, same shape as the AVX2 reduction
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t main = n & ~std::size_t(3);
    for (std::size_t i = 0; i < main; i += 4)
        for (int l = 0; l < 4; ++l) acc[l] += log2_1p_lane(x[i + l]);
    for (std::size_t i = main; i < n; ++i) acc[i - main] += log2_1p_lane(x[i]);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace risthz::kern::detail
