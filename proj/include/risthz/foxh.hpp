#ifndef RISTHZ_FOXH_HPP
#define RISTHZ_FOXH_HPP

#include <complex>
#include <vector>

namespace risthz::foxh {

using cplx = std::complex<double>;

// Gamma(offset + sum_i coeffs[i] * s_i); denominator factors divide.
struct GammaFactor {
    double offset = 0.0;
    std::vector<double> coeffs;
    bool denominator = false;
};

// Per-variable factor Gamma(offset + coeff * s).
struct InnerFactor {
    double offset = 0.0;
    double coeff = 1.0;
    bool denominator = false;
};

// Per-variable multiplier  sum_j exp(log_weights[j]) * Gamma(offset + j + scale * s).
// Carries the truncated coefficient series of a fading hop into the integrand
// without expanding the outer sum term by term.
struct GammaSeries {
    std::vector<double> log_weights;
    double offset = 1.0;
    double scale = 0.5;
};

struct QuadSpec {
    double step = 0.1;
    double half_width = 40.0;
    double rel_tol = 1e-3;     // refinement acceptance threshold
    int max_refine = 3;
    double trunc_eps = 1e-18;  // per-axis magnitude cutoff
};

// A multiple Mellin-Barnes integral
//   (1/(2 pi i))^dim Int ... Int  [outer gammas] prod_i { [inner gammas]
//       [series] z_i^(e_i s_i) } ds_1 ... ds_dim
// on vertical contours Re(s_i) = contours[i].
struct FoxHSpec {
    int dim = 1;
    std::vector<GammaFactor> outer;
    std::vector<std::vector<InnerFactor>> inner;
    std::vector<std::vector<GammaSeries>> series;
    std::vector<double> arg_exponents;  // empty = all 1
    std::vector<double> contours;       // empty = choose automatically
    QuadSpec quad;
};

struct EvalResult {
    double value = 0.0;
    double imag_rel = 0.0;       // |Im| / (|Re| + eps) of the final sum
    int refinements = 0;
    std::size_t points = 0;      // integrand evaluations of the last pass
    bool converged = false;
};

// Midpoint abscissa strictly between each variable's pole sets; throws
// contour_error when the sets touch or an outer numerator argument would be
// driven to the wrong side.
std::vector<double> choose_contours(const FoxHSpec& spec);

EvalResult eval_foxh_detailed(const FoxHSpec& spec, const std::vector<double>& args);
double eval_foxh(const FoxHSpec& spec, const std::vector<double>& args);

struct MeijerGSpec {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a;  // length p
    std::vector<double> b;  // length q
};

// Meijer's G as the univariate case of the same quadrature.
double eval_meijer_g(const MeijerGSpec& spec, double x, const QuadSpec& quad = {});

// dim-1 view of a Meijer G spec (used by tests and by the 5FM path).
FoxHSpec meijer_to_foxh(const MeijerGSpec& spec, const QuadSpec& quad = {});

}  // namespace risthz::foxh

#endif
