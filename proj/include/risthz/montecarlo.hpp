#ifndef RISTHZ_MONTECARLO_HPP
#define RISTHZ_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "risthz/perf_metrics.hpp"

namespace risthz::mc {

// Sampling controls; samples are drawn in fixed-size chunks with one counter
// RNG stream per chunk, so estimates are bit-identical for any thread count.
struct McOptions {
    std::size_t n_samples = 1000000;
    std::uint64_t seed = 1;
    int threads = 1;  // <= 1 runs serial; chunk->stream mapping is fixed either way
};

enum class PhaseMode { ideal_aligned, given };

struct Estimate {
    double value = 0.0;
    double lo = 0.0;   // 95% confidence bounds
    double hi = 0.0;
};

// Wilson score interval for k successes out of n.
Estimate wilson_ci(std::size_t k, std::size_t n);

// draws of the small-scale sum h_F (ideal alignment or explicit phases)
std::vector<double> sample_hf(const perf::SystemModel& model, const McOptions& opts,
                              PhaseMode mode = PhaseMode::ideal_aligned,
                              const std::vector<double>& phases = {});

// draws of the composite gain G = (h_F h_P |h_L|)^2
std::vector<double> sample_gain(const perf::SystemModel& model, const McOptions& opts,
                                PhaseMode mode = PhaseMode::ideal_aligned,
                                const std::vector<double>& phases = {});

// draws of the instantaneous SNDR at the model's own power
std::vector<double> sample_sndr(const perf::SystemModel& model, const McOptions& opts);

// P(sndr < gamma_th) with CI; power grids reuse one gain pass
Estimate estimate_op(const perf::SystemModel& model, double gamma_th, const McOptions& opts);
std::vector<Estimate> estimate_op_curve(const perf::SystemModel& model,
                                        const std::vector<double>& powers_w, double gamma_th,
                                        const McOptions& opts);
std::vector<Estimate> estimate_op_thresholds(const perf::SystemModel& model,
                                             const std::vector<double>& gamma_ths,
                                             const McOptions& opts);

// E[log2(1 + sndr)] with CI
Estimate estimate_capacity(const perf::SystemModel& model, const McOptions& opts);
std::vector<Estimate> estimate_capacity_curve(const perf::SystemModel& model,
                                              const std::vector<double>& powers_w,
                                              const McOptions& opts);

// capacity estimate from already-drawn SNDR samples
Estimate capacity_of_samples(const std::vector<double>& sndr_samples);

// right-continuous step CDF of a sample set
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);
    double operator()(double x) const;
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

}  // namespace risthz::mc

#endif
