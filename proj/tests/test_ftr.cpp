#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "risthz/error.hpp"
#include "risthz/ftr.hpp"

using namespace risthz;
using ftr::FtrParams;

namespace {

const FtrParams kSetA{5.0, 5.0, 0.6, 1.0};                        // generic
const FtrParams kTrain{2.9, 0.63, 0.3, 4.84e-3 * 4.84e-3};        // train-center fit
const FtrParams kTx1{7.0, 6.0, 0.2, 2.7729 * 2.7729};             // entrance-hall TX1
const FtrParams kTx15{6.0, 3.0, 0.04, 2.382 * 2.382};             // entrance-hall TX15
const FtrParams kMom{4.0, 3.0, 0.7, 10.0};                        // moment checks

double ks_distance(std::vector<double> samples, const FtrParams& p, const ftr::FtrSeries& s) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = ftr::cdf_envelope(samples[i], p, s);
        d = std::max(d, std::max((i + 1) / n - F, F - i / n));
    }
    return d;
}

// adaptive Simpson, plain and local
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * tol) return left + right;
    return simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
           simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-9) {
    const double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

}  // namespace

TEST_CASE("d coefficients: frozen oracle values") {
    // 30-digit quadrature oracle values
    CHECK(ftr::d_coeff_integral(0, kSetA) == doctest::Approx(4.67053007698846486e-4).epsilon(1e-11));
    CHECK(ftr::d_coeff_integral(1, kSetA) == doctest::Approx(1.7169633072028505e-4).epsilon(1e-11));
    CHECK(ftr::d_coeff_integral(3, kSetA) == doctest::Approx(4.67583437202082839e-5).epsilon(1e-11));
    CHECK(ftr::d_coeff_integral(0, kTrain) == doctest::Approx(0.653800072604210447).epsilon(1e-11));
    CHECK(ftr::d_coeff_integral(1, kTrain) == doctest::Approx(0.115353156314080304).epsilon(1e-11));
    CHECK(ftr::d_coeff_integral(2, kTrain) == doctest::Approx(0.0527451091155985725).epsilon(1e-11));
    CHECK(ftr::d_coeff_integral(0, kTx1) == doctest::Approx(2.80523780072180833e-5).epsilon(1e-11));
    CHECK(ftr::d_coeff_integral(0, kMom) == doctest::Approx(9.73781267787197513e-3).epsilon(1e-11));
}

TEST_CASE("direct Eq.-style evaluation agrees with the integral route") {
    // the literal alternating sum loses roughly one digit per three orders
    for (const auto& p : {kSetA, kTrain, kTx1, kTx15, kMom}) {
        for (int j : {0, 1, 2, 3, 5, 8, 12}) {
            const double a = ftr::d_coeff_direct(j, p);
            const double b = ftr::d_coeff_integral(j, p);
            CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
        }
        for (int j : {16, 20}) {
            const double a = ftr::d_coeff_direct(j, p);
            const double b = ftr::d_coeff_integral(j, p);
            CHECK(std::abs(a - b) <= 1e-5 * std::abs(b));
        }
    }
}

TEST_CASE("delta = 0 coefficient identity") {
    const FtrParams p{3.2, 1.7, 0.0, 0.5};
    for (int j : {0, 1, 2, 5, 9}) {
        const double expect =
            std::exp(std::lgamma(j + p.m) - (j + p.m) * std::log(p.m + p.k_ratio));
        CHECK(ftr::d_coeff_direct(j, p) == doctest::Approx(expect).epsilon(1e-10));
        CHECK(ftr::d_coeff_integral(j, p) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("series normalization gate") {
    for (const auto& p : {kSetA, kTrain, kTx1, kTx15}) {
        const auto s = ftr::compute_series(p, 1e-6);
        CHECK(s.trunc_metric <= 1e-6);
        CHECK(s.n_t >= 41);
        const double norm = integrate([&](double g) { return ftr::pdf_power(g, p, s); }, 0.0,
                                      60.0 * p.sigma_sq * (1 + p.k_ratio), 1e-10);
        CHECK(std::abs(norm - 1.0) < 1e-5);
    }
}

TEST_CASE("frozen pdf/cdf/moment values for set A") {
    const auto s = ftr::compute_series(kSetA, 1e-12);
    CHECK(ftr::pdf_power(1.0, kSetA, s) == doctest::Approx(0.0412466900391874615).epsilon(1e-9));
    CHECK(ftr::cdf_power(12.0, kSetA, s) == doctest::Approx(0.595028562334284).epsilon(1e-8));
    CHECK(ftr::envelope_moment(1.0, kSetA, s) == doctest::Approx(3.20509312606368).epsilon(1e-9));
    CHECK(ftr::envelope_moment(2.0, kSetA, s) == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(ftr::envelope_moment(0.0, kSetA, s) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("moment identities") {
    const auto s = ftr::compute_series(kMom, 1e-12);
    CHECK(ftr::envelope_moment(2.0, kMom, s) == doctest::Approx(100.0).epsilon(1e-8));
    CHECK(ftr::envelope_moment(1.0, kMom, s) == doctest::Approx(9.0594728289267).epsilon(1e-9));
    // against quadrature of g * pdf
    const double by_quad =
        integrate([&](double g) { return g * ftr::pdf_power(g, kMom, s); }, 0.0, 3000.0, 1e-8);
    CHECK(std::abs(by_quad - 100.0) / 100.0 < 1e-4);
    CHECK_THROWS_AS(ftr::envelope_moment(-2.0, kMom, s), domain_error);
}

TEST_CASE("cdf properties and train-center frozen value") {
    const auto s = ftr::compute_series(kTrain, 1e-6);
    CHECK(ftr::cdf_power(0.0, kTrain, s) == 0.0);
    CHECK(ftr::cdf_power(1e6 * kTrain.sigma_sq, kTrain, s) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(ftr::cdf_power(kTrain.mean_power(), kTrain, s) ==
          doctest::Approx(0.663123771046851).epsilon(1e-6));
    double prev = -1.0;
    for (double g = 0.0; g < 10.0 * kTrain.mean_power(); g += 0.1 * kTrain.mean_power()) {
        const double c = ftr::cdf_power(g, kTrain, s);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("envelope forms are the power forms under r^2") {
    const auto s = ftr::compute_series(kSetA, 1e-8);
    for (double r : {0.3, 1.0, 2.2}) {
        CHECK(ftr::cdf_envelope(r, kSetA, s) == ftr::cdf_power(r * r, kSetA, s));
        CHECK(ftr::pdf_envelope(r, kSetA, s) ==
              doctest::Approx(2 * r * ftr::pdf_power(r * r, kSetA, s)));
    }
    const double norm =
        integrate([&](double r) { return ftr::pdf_envelope(r, kSetA, s); }, 0.0, 40.0, 1e-10);
    CHECK(std::abs(norm - 1.0) < 1e-5);
}

TEST_CASE("sampler matches analytic distribution (K-S)") {
    const std::size_t n = 100000;
    int idx = 0;
    for (const auto& p : {kSetA, kTrain, kTx1}) {
        const auto s = ftr::compute_series(p, 1e-7);
        const auto samples = ftr::sample_envelope(p, 777 + idx++, n);
        CHECK(ks_distance(samples, p, s) < 0.01);
        double mean_sq = 0.0;
        for (double r : samples) mean_sq += r * r;
        mean_sq /= n;
        CHECK(std::abs(mean_sq - p.mean_power()) / p.mean_power() < 0.01);
    }
}

TEST_CASE("K = 0 reduces to Rayleigh power") {
    const FtrParams p{0.0, 2.0, 0.5, 1.3};
    const auto s = ftr::compute_series(p, 1e-9);
    CHECK(s.n_t == 1);
    const auto samples = ftr::sample_envelope(p, 5, 200000);
    double mean_sq = 0.0;
    for (double r : samples) mean_sq += r * r;
    mean_sq /= samples.size();
    CHECK(std::abs(mean_sq - 2.0 * p.sigma_sq) / (2.0 * p.sigma_sq) < 0.01);
    // pdf is exactly exponential in g
    CHECK(ftr::pdf_power(1.0, p, s) ==
          doctest::Approx(std::exp(-1.0 / 2.6) / 2.6).epsilon(1e-12));
}

TEST_CASE("sampler determinism") {
    const auto a = ftr::sample_envelope(kSetA, 99, 4096);
    const auto b = ftr::sample_envelope(kSetA, 99, 4096);
    CHECK(a == b);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(ftr::compute_series({-1.0, 1.0, 0.5, 1.0}, 1e-6), domain_error);
    CHECK_THROWS_AS(ftr::compute_series({1.0, 1.0, 1.5, 1.0}, 1e-6), domain_error);
    const auto s = ftr::compute_series(kSetA, 1e-6);
    CHECK_THROWS_AS(ftr::pdf_power(-1.0, kSetA, s), domain_error);
    CHECK_THROWS_AS(ftr::cdf_envelope(-0.1, kSetA, s), domain_error);
}
