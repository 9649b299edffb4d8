#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risthz/montecarlo.hpp"

using namespace risthz;
using perf::SystemModel;

namespace {

double dbw(double v) { return std::pow(10.0, v / 10.0); }

SystemModel small_model(int l, double p_dbw, double kappa) {
    const auto h1 = ftr::FtrParams::from_mean_power(5.0, 5.0, 0.6, 10.0);
    const auto h2 = ftr::FtrParams::from_mean_power(6.0, 7.0, 0.4, 10.0);
    const auto mis = thz::Misalignment::from_direct(0.01, 0.25);
    return SystemModel::iid(l, h1, h2, mis, 0.1, perf::HardwareProfile{kappa, kappa},
                            dbw(p_dbw), dbw(1.0));
}

}  // namespace

TEST_CASE("reproducibility: same seed, same estimates, thread-count independent") {
    const auto m = small_model(2, 40.0, 0.1);
    const auto a = mc::estimate_op(m, 1.0, {150000, 42, 1});
    const auto b = mc::estimate_op(m, 1.0, {150000, 42, 1});
    const auto c = mc::estimate_op(m, 1.0, {150000, 42, 4});
    CHECK(a.value == b.value);
    CHECK(a.value == c.value);
    CHECK(a.value > 0.0);
    CHECK(a.value < 1.0);
    const auto d = mc::estimate_op(m, 1.0, {150000, 43, 1});
    CHECK(a.value != d.value);
}

TEST_CASE("sndr ceiling holds for every sample") {
    const auto m = small_model(1, 30.0, 0.2);
    const auto s = mc::sample_sndr(m, {50000, 3});
    const double ceil = m.hw.sndr_ceiling();
    for (double v : s) CHECK(v < ceil);
    // vanishing-noise limit: every sample is pushed to the ceiling
    auto loud = m;
    loud.noise_w = 1e-300;
    const auto s2 = mc::sample_sndr(loud, {20000, 4});
    for (double v : s2) CHECK(v == doctest::Approx(ceil).epsilon(1e-6));
}

TEST_CASE("op trivial thresholds") {
    const auto m = small_model(1, 10.0, 0.1);
    CHECK(mc::estimate_op(m, 0.0, {50000, 5}).value == 0.0);
    CHECK(mc::estimate_op(m, m.hw.sndr_ceiling() * 2.0, {50000, 5}).value == 1.0);
}

TEST_CASE("capacity of constant samples") {
    const std::vector<double> ones(1000, 1.0);
    const auto est = mc::capacity_of_samples(ones);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.hi - est.lo < 1e-12);
}

TEST_CASE("wilson interval covers a known Bernoulli rate") {
    // 100 seeded repetitions of Bernoulli(0.1), n = 2000
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
        rng::Stream s(777, rep);
        std::size_t k = 0;
        const std::size_t n = 2000;
        for (std::size_t i = 0; i < n; ++i) k += (s.uniform() < 0.1);
        const auto ci = mc::wilson_ci(k, n);
        covered += (ci.lo <= 0.1 && 0.1 <= ci.hi);
    }
    CHECK(covered >= 90);
}

TEST_CASE("estimator consistency across sample sizes") {
    const auto m = small_model(2, 24.0, 0.1);
    const auto big = mc::estimate_op(m, 1.0, {1000000, 11});
    const auto small = mc::estimate_op(m, 1.0, {100000, 12});
    const double width = small.hi - small.lo;
    CHECK(std::abs(big.value - small.value) <= 3.0 * width);
}

TEST_CASE("power grid reuses one gain pass consistently") {
    const auto m = small_model(2, 20.0, 0.1);
    const auto curve = mc::estimate_op_curve(m, {dbw(16.0), dbw(20.0), dbw(24.0)}, 1.0,
                                             {200000, 21});
    CHECK(curve[0].value >= curve[1].value);
    CHECK(curve[1].value >= curve[2].value);
    const auto single = mc::estimate_op(m.with_power(dbw(20.0)), 1.0, {200000, 21});
    CHECK(curve[1].value == single.value);
}

TEST_CASE("empirical cdf is a proper step function") {
    mc::EmpiricalCdf cdf({3.0, 1.0, 2.0, 2.0});
    CHECK(cdf(0.5) == 0.0);
    CHECK(cdf(1.0) == doctest::Approx(0.25));
    CHECK(cdf(2.0) == doctest::Approx(0.75));
    CHECK(cdf(10.0) == 1.0);
}

TEST_CASE("given-phase mode: aligned phases beat zero phases") {
    const auto m = small_model(8, 20.0, 0.0);
    // with explicit zero phases the element terms add with random channel
    // phases; the ideal-aligned mode adds envelopes coherently
    const auto aligned = mc::sample_hf(m, {60000, 33}, mc::PhaseMode::ideal_aligned);
    const auto zeros = mc::sample_hf(m, {60000, 33}, mc::PhaseMode::given,
                                     std::vector<double>(8, 0.0));
    double ma = 0, mz = 0;
    for (double v : aligned) ma += v;
    for (double v : zeros) mz += v;
    CHECK(ma / aligned.size() > 2.0 * mz / zeros.size());
}
