#ifndef RISTHZ_FTR_HPP
#define RISTHZ_FTR_HPP

#include <cstdint>
#include <vector>

#include "risthz/rng.hpp"

namespace risthz::ftr {

// One fluctuating two-ray hop: K (specular/diffuse power ratio), m (fading
// severity), delta (specular similarity), sigma_sq (diffuse variance per
// dimension). Mean power of the squared envelope is 2*sigma_sq*(1+K).
struct FtrParams {
    double k_ratio;
    double m;
    double delta;
    double sigma_sq;

    void check() const;
    double mean_power() const { return 2.0 * sigma_sq * (1.0 + k_ratio); }

    // sigma_sq chosen so the mean power equals mean_pow
    static FtrParams from_mean_power(double k_ratio, double m, double delta, double mean_pow);
};

// Truncated coefficient series of the power PDF. w[j] are the stable
// summation weights  w_j = m^m K^j d_j / (Gamma(m) j! Gamma(j+1)); the PDF is
//   f(g) = sum_j w_j g^j / (2 sigma^2)^{j+1} exp(-g / (2 sigma^2))
// and the normalization gate is sum_j w_j Gamma(j+1) -> 1.
struct FtrSeries {
    std::vector<double> d;      // raw coefficients (diagnostic; can be large)
    std::vector<double> w;      // summation weights, all >= 0
    std::vector<double> log_w;  // ln w_j for log-domain evaluation
    int n_t = 0;
    double trunc_metric = 0.0;  // |1 - sum_j w_j Gamma(j+1)|
    double d_sum = 0.0;         // diagnostic: plain sum of d_j
};

// Literal coefficient formula: complex inner sum with the e^{i pi (2l-k)/2}
// factor and the Ferrers-branch Legendre function; imaginary parts cancel and
// are asserted small. Numerically safe up to n around 20 (alternating sum).
double d_coeff_direct(int n, const FtrParams& p);

// Equivalent phase-difference integral, stable at any order:
//   d_n = Gamma(n+m) K^{-n} (1/pi) Int_0^pi c^n / (m+c)^{n+m} dtheta,
//   c(theta) = K (1 + Delta cos theta).
double d_coeff_integral(int n, const FtrParams& p);

FtrSeries compute_series(const FtrParams& p, double tol = 1e-6);

double pdf_power(double g, const FtrParams& p, const FtrSeries& s);
double cdf_power(double g, const FtrParams& p, const FtrSeries& s);
double pdf_envelope(double r, const FtrParams& p, const FtrSeries& s);
double cdf_envelope(double r, const FtrParams& p, const FtrSeries& s);

// E[R^s] for s > -2 by term-wise integration.
double envelope_moment(double s, const FtrParams& p, const FtrSeries& series);

// Generative sampler: zeta ~ Gamma(m, mean 1); two specular rays of
// amplitudes V1, V2 with independent uniform phases; complex diffuse term
// with per-dimension variance sigma_sq.
class EnvelopeSampler {
public:
    explicit EnvelopeSampler(const FtrParams& p);
    // draws n envelopes; batched transforms, deterministic per stream state
    void sample_block(rng::Stream& stream, double* out, std::size_t n) const;

    double v1() const { return v1_; }
    double v2() const { return v2_; }

private:
    double m_, v1_, v2_, sigma_;
};

std::vector<double> sample_envelope(const FtrParams& p, std::uint64_t seed, std::size_t n);

}  // namespace risthz::ftr

#endif
