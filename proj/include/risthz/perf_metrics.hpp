#ifndef RISTHZ_PERF_METRICS_HPP
#define RISTHZ_PERF_METRICS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "risthz/foxh.hpp"
#include "risthz/ftr.hpp"
#include "risthz/thz_channel.hpp"

namespace risthz::perf {

struct HardwareProfile {
    double kappa_s = 0.0;
    double kappa_d = 0.0;
    double kappa_sq() const { return kappa_s * kappa_s + kappa_d * kappa_d; }
    // SNDR ceiling 1/kappa^2 (infinite for ideal chains)
    double sndr_ceiling() const;
};

// End-to-end system: L per-element FTR hop pairs, pointing error block,
// deterministic path amplitude |h_L|, hardware profile, transmit power and
// noise power. Series caches are filled eagerly so the evaluators stay pure.
struct SystemModel {
    int l_elements = 1;
    std::vector<ftr::FtrParams> hop1;
    std::vector<ftr::FtrParams> hop2;
    thz::Misalignment mis;
    double h_l = 1.0;  // |h_L|
    HardwareProfile hw;
    double power_w = 1.0;
    double noise_w = 1.0;

    std::vector<std::shared_ptr<const ftr::FtrSeries>> series1, series2;

    // same FTR parameters at every element
    static SystemModel iid(int l, const ftr::FtrParams& h1, const ftr::FtrParams& h2,
                           const thz::Misalignment& mis, double h_l, HardwareProfile hw,
                           double power_w, double noise_w, double series_tol = 1e-7);
    static SystemModel per_element(std::vector<ftr::FtrParams> h1,
                                   std::vector<ftr::FtrParams> h2,
                                   const thz::Misalignment& mis, double h_l, HardwareProfile hw,
                                   double power_w, double noise_w, double series_tol = 1e-7);

    SystemModel with_power(double p) const;
    void check() const;
};

// instantaneous SNDR for given small-scale and pointing amplitudes
double sndr(double h_f, double h_p, const SystemModel& model);

// the argument Upsilon(x) = sqrt(x N0 / (|h_L|^2 P (1 - x kappa^2)))
double upsilon(double x, const SystemModel& model);

struct CdfResult {
    double value = 0.0;   // clamped to [0,1]
    double raw = 0.0;     // pre-clamp quadrature value
    double clamp = 0.0;   // clamp magnitude
    foxh::EvalResult quad;
};

// Exact SNDR CDF/PDF through the L-variate Mellin-Barnes form; L <= 3.
CdfResult cdf_sndr_exact_detailed(double x, const SystemModel& model);
double cdf_sndr_exact(double x, const SystemModel& model);
double pdf_sndr_exact(double x, const SystemModel& model);
// ideal-chain (kappa = 0) CDF
double cdf_snr_exact(double x, const SystemModel& model);

// CDF through the one-dimensional pointing integral, for an arbitrary
// distribution of the small-scale sum |h_F| given by its CDF.
double cdf_via_lemma1(double x, const SystemModel& model,
                      const std::function<double(double)>& hf_cdf, double abs_tol = 1e-6);

// CDF of the small-scale sum h_F alone (no pointing, no power); L <= 3.
double cdf_hf(double y, const SystemModel& model);

// E[h_F^{-p}], 0 < p < 2L, by quadrature against cdf_hf
double hf_negative_moment(double p, const SystemModel& model);

// High-SNDR residue approximation (leading Mellin-Barnes poles).
double cdf_high_sndr(double x, const SystemModel& model);

// per-element product moments E[(R1 R2)^k], k = 1..kmax
std::vector<std::vector<double>> product_term_moments(const SystemModel& model, int kmax = 5);
// moments of h_F = sum of the per-element products, k = 1..kmax
std::vector<double> sum_moments(const SystemModel& model, int kmax = 5);

// Gaussian (CLT) surrogate for h_F composed with the pointing integral.
double cdf_high_l_clt(double x, const SystemModel& model);

// five-first-moment surrogate coefficients and CDF
struct FiveMomentFit {
    double omega[5];  // Omega_1 .. Omega_5
    double a1, a2, a3, a4, a5, a6, a7;
};
FiveMomentFit five_moment_fit(const SystemModel& model);
double cdf_high_l_5fm(double x, const SystemModel& model);

enum class OutageMethod { exact, lemma1_mc, clt, fivefm, high_sndr };

// Outage probability at threshold gamma_th; lemma1_mc requires the caller to
// pass an empirical |h_F| CDF.
double outage(double gamma_th, const SystemModel& model, OutageMethod method,
              const std::function<double(double)>& hf_cdf = {});

// simple high-power outage form and the log-log slope a_min / 2
double op_high_snr(double x, const SystemModel& model);
double high_snr_slope(const SystemModel& model);

// maximum achievable expected received amplitude
double e_opt(const SystemModel& model);

enum class HfpRoute { automatic, foxh, moments };
// E[|h_FP|^2]; the regularized Mellin-Barnes route is gated at L <= 3, the
// moment route (independence factorization) is exact at any L.
double e_hfp_sq(const SystemModel& model, HfpRoute route = HfpRoute::automatic);

double capacity_upper_nonideal(const SystemModel& model);
double capacity_upper_ideal(const SystemModel& model);
// exact ideal-chain ergodic capacity via the (L+1)-variate form; L <= 2
double capacity_exact_ideal(const SystemModel& model);

}  // namespace risthz::perf

#endif
