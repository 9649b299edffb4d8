#include "risthz/perf_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "risthz/error.hpp"
#include "risthz/specfun.hpp"

namespace risthz::perf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kRegularizer = 1e-6;  // the "number close to zero" of the moment forms

using SeriesPtr = std::shared_ptr<const ftr::FtrSeries>;

std::vector<SeriesPtr> build_series(const std::vector<ftr::FtrParams>& hops, double tol) {
    std::map<std::tuple<double, double, double, double>, SeriesPtr> cache;
    std::vector<SeriesPtr> out;
    out.reserve(hops.size());
    for (const auto& p : hops) {
        const auto key = std::make_tuple(p.k_ratio, p.m, p.delta, p.sigma_sq);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::make_shared<ftr::FtrSeries>(ftr::compute_series(p, tol)))
                     .first;
        out.push_back(it->second);
    }
    return out;
}

// product of the sqrt(2) sigma scale factors of element i
double sigma_product(const SystemModel& m, int i) {
    return 2.0 * std::sqrt(m.hop1[i].sigma_sq * m.hop2[i].sigma_sq);
}

// smallest pole order of element i's own factors (series poles at -2-2j)
double series_pole_edge() { return 2.0; }

// Per-variable block of the h_F statistics: the two truncated hop series and
// Gamma(-s). The shared pointing factor of |h_FP| couples every variable, so
// it lives in the outer factors, not here.
void add_hf_variable(foxh::FoxHSpec& spec, const SystemModel& m, int i) {
    spec.inner[i] = {{0.0, -1.0, false}};
    spec.series[i] = {foxh::GammaSeries{m.series1[i]->log_w, 1.0, 0.5},
                      foxh::GammaSeries{m.series2[i]->log_w, 1.0, 0.5}};
}

// contour abscissae: between the series poles (-2) and Gamma(-s) (0), and
// with the column sum kept right of the pointing pole at -gamma^2
std::vector<double> hf_contours(const SystemModel& m, bool with_pointing) {
    const int l = m.l_elements;
    double edge = series_pole_edge();
    if (with_pointing) edge = std::min(edge, m.mis.gamma_sq / l);
    return std::vector<double>(l, -0.5 * edge);
}

// adaptive Simpson on [a,b]
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double flm = f(0.5 * (a + mid)), frm = f(0.5 * (mid + b));
    const double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    const double left = (mid - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - mid) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right;
    return simpson_rec(f, a, mid, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson_rec(f, mid, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double mid = 0.5 * (a + b);
    return simpson_rec(f, a, b, f(a), f(mid), f(b), tol, 48);
}

double signed_gamma(double x) { return specfun::ln_gamma_signed(x).value(); }

}  // namespace

double HardwareProfile::sndr_ceiling() const {
    const double k2 = kappa_sq();
    return k2 > 0.0 ? 1.0 / k2 : kInf;
}

void SystemModel::check() const {
    if (l_elements < 1) throw domain_error("SystemModel: L must be >= 1");
    if (static_cast<int>(hop1.size()) != l_elements ||
        static_cast<int>(hop2.size()) != l_elements)
        throw domain_error("SystemModel: hop lists must have length L");
    if (!(power_w > 0.0) || !(noise_w > 0.0))
        throw domain_error("SystemModel: power and noise must be > 0");
    if (!(h_l > 0.0)) throw domain_error("SystemModel: |h_L| must be > 0");
    if (static_cast<int>(series1.size()) != l_elements ||
        static_cast<int>(series2.size()) != l_elements)
        throw domain_error("SystemModel: series caches missing; build via iid()/per_element()");
}

SystemModel SystemModel::iid(int l, const ftr::FtrParams& h1, const ftr::FtrParams& h2,
                             const thz::Misalignment& mis, double h_l, HardwareProfile hw,
                             double power_w, double noise_w, double series_tol) {
    return per_element(std::vector<ftr::FtrParams>(l, h1), std::vector<ftr::FtrParams>(l, h2),
                       mis, h_l, hw, power_w, noise_w, series_tol);
}

SystemModel SystemModel::per_element(std::vector<ftr::FtrParams> h1,
                                     std::vector<ftr::FtrParams> h2,
                                     const thz::Misalignment& mis, double h_l,
                                     HardwareProfile hw, double power_w, double noise_w,
                                     double series_tol) {
    SystemModel m;
    m.l_elements = static_cast<int>(h1.size());
    m.hop1 = std::move(h1);
    m.hop2 = std::move(h2);
    m.mis = mis;
    m.h_l = h_l;
    m.hw = hw;
    m.power_w = power_w;
    m.noise_w = noise_w;
    m.series1 = build_series(m.hop1, series_tol);
    m.series2 = build_series(m.hop2, series_tol);
    m.check();
    return m;
}

SystemModel SystemModel::with_power(double p) const {
    SystemModel m = *this;
    m.power_w = p;
    return m;
}

double sndr(double h_f, double h_p, const SystemModel& model) {
    if (h_f < 0.0 || h_p < 0.0) throw domain_error("sndr: amplitudes must be >= 0");
    const double g = h_f * h_f * h_p * h_p * model.h_l * model.h_l;
    return g * model.power_w / (model.hw.kappa_sq() * g * model.power_w + model.noise_w);
}

double upsilon(double x, const SystemModel& model) {
    const double k2 = model.hw.kappa_sq();
    return std::sqrt(x * model.noise_w /
                     (model.h_l * model.h_l * model.power_w * (1.0 - x * k2)));
}

namespace {

enum class HfpForm { cdf, pdf };

// Mellin-Barnes spec of the |h_FP| = h_F h_P statistics: per-variable hop
// series with Gamma(-s_i); the shared pointing factor enters through the
// coupled pair Gamma(g2 + sum s) / Gamma(g2 + 1 + sum s).
foxh::FoxHSpec make_hfp_spec(const SystemModel& m, HfpForm form) {
    foxh::FoxHSpec spec;
    spec.dim = m.l_elements;
    spec.inner.resize(spec.dim);
    spec.series.resize(spec.dim);
    for (int i = 0; i < spec.dim; ++i) add_hf_variable(spec, m, i);
    const double g2 = m.mis.gamma_sq;
    foxh::GammaFactor point_num{g2, std::vector<double>(spec.dim, 1.0), false};
    foxh::GammaFactor point_den{g2 + 1.0, std::vector<double>(spec.dim, 1.0), true};
    foxh::GammaFactor tail{form == HfpForm::cdf ? 1.0 : 0.0,
                           std::vector<double>(spec.dim, -1.0), true};
    spec.outer = {point_num, point_den, tail};
    spec.contours = hf_contours(m, true);
    spec.quad.step = 0.05;
    return spec;
}

std::vector<double> hfp_args(const SystemModel& m, double ups) {
    std::vector<double> z(m.l_elements);
    for (int i = 0; i < m.l_elements; ++i) z[i] = m.mis.a_o * sigma_product(m, i) / ups;
    return z;
}

}  // namespace

CdfResult cdf_sndr_exact_detailed(double x, const SystemModel& model) {
    model.check();
    if (model.l_elements > 3)
        throw cost_guard_error("cdf_sndr_exact: L > 3 exceeds the exact-form cost guard");
    CdfResult res;
    const double ceil = model.hw.sndr_ceiling();
    if (x <= 0.0) {
        res.value = res.raw = 0.0;
        return res;
    }
    if (x >= ceil) {
        res.value = res.raw = 1.0;
        return res;
    }
    const auto spec = make_hfp_spec(model, HfpForm::cdf);
    const double ups = upsilon(x, model);
    res.quad = foxh::eval_foxh_detailed(spec, hfp_args(model, ups));
    res.raw = model.mis.gamma_sq * res.quad.value;
    res.value = std::clamp(res.raw, 0.0, 1.0);
    res.clamp = std::abs(res.value - res.raw);
    return res;
}

double cdf_sndr_exact(double x, const SystemModel& model) {
    return cdf_sndr_exact_detailed(x, model).value;
}

double pdf_sndr_exact(double x, const SystemModel& model) {
    model.check();
    if (model.l_elements > 3)
        throw cost_guard_error("pdf_sndr_exact: L > 3 exceeds the exact-form cost guard");
    const double k2 = model.hw.kappa_sq();
    const double ceil = model.hw.sndr_ceiling();
    if (x <= 0.0 || x >= ceil) return 0.0;
    const auto spec = make_hfp_spec(model, HfpForm::pdf);
    const double ups = upsilon(x, model);
    const double h = foxh::eval_foxh(spec, hfp_args(model, ups));
    return std::max(0.0, model.mis.gamma_sq * h / (2.0 * x * (1.0 - x * k2)));
}

double cdf_snr_exact(double x, const SystemModel& model) {
    SystemModel ideal = model;
    ideal.hw = HardwareProfile{0.0, 0.0};
    return cdf_sndr_exact(x, ideal);
}

double cdf_via_lemma1(double x, const SystemModel& model,
                      const std::function<double(double)>& hf_cdf, double abs_tol) {
    model.check();
    if (!hf_cdf) throw domain_error("cdf_via_lemma1: hf_cdf is required");
    const double ceil = model.hw.sndr_ceiling();
    if (x <= 0.0) return 0.0;
    if (x >= ceil) return 1.0;
    const double ups = upsilon(x, model);
    const double g2 = model.mis.gamma_sq;
    const double a_o = model.mis.a_o;
    // substitute y = A_o u^{1/g2}: the integral becomes Int_0^1 F_hF(ups/y(u)) du
    const auto f = [&](double u) {
        if (u <= 0.0) return 1.0;  // y -> 0, F_hF(inf) = 1
        const double y = a_o * std::pow(u, 1.0 / g2);
        return std::clamp(hf_cdf(ups / y), 0.0, 1.0);
    };
    return std::clamp(integrate(f, 0.0, 1.0, abs_tol), 0.0, 1.0);
}

double cdf_hf(double y, const SystemModel& model) {
    model.check();
    if (model.l_elements > 3)
        throw cost_guard_error("cdf_hf: L > 3 exceeds the exact-form cost guard");
    if (y <= 0.0) return 0.0;
    foxh::FoxHSpec spec;
    spec.dim = model.l_elements;
    spec.inner.resize(spec.dim);
    spec.series.resize(spec.dim);
    for (int i = 0; i < spec.dim; ++i) add_hf_variable(spec, model, i);
    foxh::GammaFactor tail{1.0, std::vector<double>(spec.dim, -1.0), true};
    spec.outer = {tail};
    spec.contours = hf_contours(model, false);
    spec.quad.step = 0.05;
    std::vector<double> z(spec.dim);
    for (int i = 0; i < spec.dim; ++i) z[i] = sigma_product(model, i) / y;
    return std::clamp(foxh::eval_foxh(spec, z), 0.0, 1.0);
}

double hf_negative_moment(double p, const SystemModel& model) {
    model.check();
    const int l = model.l_elements;
    if (!(p > 0.0) || !(p < 2.0 * l))
        throw domain_error("hf_negative_moment: requires 0 < p < 2L");
    if (l == 1)
        return ftr::envelope_moment(-p, model.hop1[0], *model.series1[0]) *
               ftr::envelope_moment(-p, model.hop2[0], *model.series2[0]);
    // E[h_F^{-p}] = p Int F_hF(y) y^{-p-1} dy, split on a typical scale
    double mean = 0.0;
    for (int i = 0; i < l; ++i)
        mean += ftr::envelope_moment(1.0, model.hop1[i], *model.series1[i]) *
                ftr::envelope_moment(1.0, model.hop2[i], *model.series2[i]);
    const double y_hi = 40.0 * mean;
    const double y_lo = 1e-4 * mean;
    const auto f = [&](double v) {  // v = ln y
        const double yy = std::exp(v);
        return cdf_hf(yy, model) * std::pow(yy, -p);
    };
    double acc = p * integrate(f, std::log(y_lo), std::log(y_hi), 1e-8);
    // tails: below y_lo the CDF falls like y^{2L}; above y_hi it is ~1
    acc += p * cdf_hf(y_lo, model) * std::pow(y_lo, -p) / (2.0 * l - p);
    acc += std::pow(y_hi, -p);
    return acc;
}

namespace {

std::mutex g_negmom_mutex;
std::map<std::tuple<const void*, const void*, double, double>, double> g_negmom_cache;

double cached_neg_moment(const SystemModel& model) {
    const auto key = std::make_tuple(static_cast<const void*>(model.series1[0].get()),
                                     static_cast<const void*>(model.series2[0].get()),
                                     model.mis.gamma_sq, static_cast<double>(model.l_elements));
    {
        std::lock_guard<std::mutex> lk(g_negmom_mutex);
        const auto it = g_negmom_cache.find(key);
        if (it != g_negmom_cache.end()) return it->second;
    }
    const double v = hf_negative_moment(model.mis.gamma_sq, model);
    std::lock_guard<std::mutex> lk(g_negmom_mutex);
    g_negmom_cache[key] = v;
    return v;
}

}  // namespace

double cdf_high_sndr(double x, const SystemModel& model) {
    model.check();
    const double ceil = model.hw.sndr_ceiling();
    if (x <= 0.0) return 0.0;
    if (x >= ceil) return 1.0;
    const double g2 = model.mis.gamma_sq;
    const int l = model.l_elements;
    const double ups = upsilon(x, model);

    if (g2 < 2.0 * l) {
        // pointing-limited tail: F ~ (Ups/A_o)^{g2} E[h_F^{-g2}]
        const double neg_mom = cached_neg_moment(model);
        return std::clamp(std::pow(ups / model.mis.a_o, g2) * neg_mom, 0.0, 1.0);
    }
    if (l == 1) {
        // fading-limited single-element case: leading residues of the two hop
        // series; a shared leading order is a double pole and is reported
        const auto& w1 = model.series1[0]->w;
        const auto& w2 = model.series2[0]->w;
        const double z = model.mis.a_o * sigma_product(model, 0) / ups;
        double total = 0.0;
        double wmax = 0.0;
        for (std::size_t j1 = 0; j1 < w1.size(); ++j1)
            for (std::size_t j2 = 0; j2 < w2.size(); ++j2)
                wmax = std::max(wmax, w1[j1] * w2[j2]);
        for (std::size_t j1 = 0; j1 < w1.size(); ++j1) {
            for (std::size_t j2 = 0; j2 < w2.size(); ++j2) {
                const double w = w1[j1] * w2[j2];
                if (w < 1e-10 * wmax) continue;
                const double c1 = 2.0 + 2.0 * static_cast<double>(j1);
                const double c2 = 2.0 + 2.0 * static_cast<double>(j2);
                const double varpi = std::min({g2, c1, c2});
                const int ties = (std::abs(g2 - varpi) < 1e-12) +
                                 (std::abs(c1 - varpi) < 1e-12) +
                                 (std::abs(c2 - varpi) < 1e-12);
                if (ties > 1)
                    throw degeneracy_error(
                        "cdf_high_sndr: degenerate leading pole (gamma^2 = 2+2j or j1 = j2); "
                        "the residue split assumes simple poles");
                double r;
                if (varpi == c1)
                    r = std::tgamma(static_cast<double>(j2) - static_cast<double>(j1)) *
                        std::tgamma(c1) * signed_gamma(g2 - c1);
                else if (varpi == c2)
                    r = std::tgamma(static_cast<double>(j1) - static_cast<double>(j2)) *
                        std::tgamma(c2) * signed_gamma(g2 - c2);
                else
                    r = signed_gamma(1.0 + static_cast<double>(j1) - 0.5 * g2) *
                        signed_gamma(1.0 + static_cast<double>(j2) - 0.5 * g2) *
                        std::tgamma(g2);
                r /= std::tgamma(g2 - varpi + 1.0) * std::tgamma(1.0 + varpi);
                total += w * r * std::pow(z, -varpi);
            }
        }
        return std::clamp(g2 * total, 0.0, 1.0);
    }
    throw degeneracy_error(
        "cdf_high_sndr: fading-limited regime (gamma^2 >= 2L) has a degenerate leading pole "
        "for L >= 2; use the exact or 5FM path");
}

std::vector<std::vector<double>> product_term_moments(const SystemModel& model, int kmax) {
    model.check();
    if (kmax < 1 || kmax > 5) throw domain_error("product_term_moments: k must be in 1..5");
    std::vector<std::vector<double>> mu(model.l_elements, std::vector<double>(kmax));
    for (int i = 0; i < model.l_elements; ++i)
        for (int k = 1; k <= kmax; ++k)
            mu[i][k - 1] = ftr::envelope_moment(k, model.hop1[i], *model.series1[i]) *
                           ftr::envelope_moment(k, model.hop2[i], *model.series2[i]);
    return mu;
}

std::vector<double> sum_moments(const SystemModel& model, int kmax) {
    const auto mu = product_term_moments(model, kmax);
    std::vector<double> cur(kmax + 1, 0.0);
    cur[0] = 1.0;
    std::vector<double> next(kmax + 1);
    for (int i = 0; i < model.l_elements; ++i) {
        for (int k = 0; k <= kmax; ++k) {
            double acc = 0.0;
            for (int j = 0; j <= k; ++j) {
                const double mj = (j == 0) ? 1.0 : mu[i][j - 1];
                acc += std::exp(std::lgamma(k + 1.0) - std::lgamma(j + 1.0) -
                                std::lgamma(k - j + 1.0)) *
                       mj * cur[k - j];
            }
            next[k] = acc;
        }
        cur = next;
    }
    return {cur.begin() + 1, cur.end()};
}

double cdf_high_l_clt(double x, const SystemModel& model) {
    model.check();
    const auto mu = product_term_moments(model, 2);
    double mean = 0.0, var = 0.0;
    for (const auto& m : mu) {
        mean += m[0];
        var += m[1] - m[0] * m[0];
    }
    const double sd2 = std::sqrt(2.0 * var);
    const auto hf_cdf = [&](double v) { return 0.5 * specfun::erfc(-(v - mean) / sd2); };
    return cdf_via_lemma1(x, model, hf_cdf);
}

FiveMomentFit five_moment_fit(const SystemModel& model) {
    const auto om = sum_moments(model, 5);
    FiveMomentFit f{};
    for (int i = 0; i < 5; ++i) {
        f.omega[i] = om[i];
        if (!(om[i] > 0.0)) throw degeneracy_error("five_moment_fit: non-positive moment");
    }
    for (int i = 1; i < 4; ++i)
        if (om[i] * om[i] > om[i - 1] * om[i + 1] * (1.0 + 1e-9))
            throw degeneracy_error("five_moment_fit: moments are not log-convex");
    const double o1 = om[0];
    const double p2 = om[1] / om[0], p3 = om[2] / om[1], p4 = om[3] / om[2];
    f.a3 = (4.0 * p4 - 9.0 * p3 + 6.0 * p2 - o1) / (3.0 * p3 - p4 - 3.0 * p2 + o1);
    f.a2 = 0.5 * f.a3 * (p4 - 2.0 * p3 + p2) + 2.0 * p4 - 3.0 * p3 + p2;
    f.a6 = (f.a3 * (p2 - o1) + 2.0 * p2 - o1) / f.a2 - 3.0;
    const double disc = (f.a6 + 2.0) * (f.a6 + 2.0) - 4.0 * o1 * (f.a3 + 1.0) / f.a2;
    if (disc < 0.0)
        throw degeneracy_error("five_moment_fit: a7 would be imaginary for these moments");
    f.a7 = std::sqrt(disc);
    f.a4 = 0.5 * (f.a6 + f.a7);
    f.a5 = 0.5 * (f.a6 - f.a7);
    f.a1 = std::exp(std::lgamma(f.a3 + 1.0)) /
           (f.a2 * signed_gamma(f.a4 + 1.0) * signed_gamma(f.a5 + 1.0));
    return f;
}

double cdf_high_l_5fm(double x, const SystemModel& model) {
    model.check();
    const double ceil = model.hw.sndr_ceiling();
    if (x <= 0.0) return 0.0;
    if (x >= ceil) return 1.0;
    const auto f = five_moment_fit(model);
    const double g2 = model.mis.gamma_sq;
    const double z = upsilon(x, model) / (model.mis.a_o * f.a2);
    foxh::MeijerGSpec g;
    g.m = 3;
    g.n = 1;
    g.p = 3;
    g.q = 4;
    g.a = {1.0, f.a3 + 1.0, g2 + 1.0};
    g.b = {f.a4 + 1.0, f.a5 + 1.0, g2, 0.0};
    const double val = f.a1 * f.a2 * g2 * foxh::eval_meijer_g(g, z);
    return std::clamp(val, 0.0, 1.0);
}

double outage(double gamma_th, const SystemModel& model, OutageMethod method,
              const std::function<double(double)>& hf_cdf) {
    switch (method) {
        case OutageMethod::exact:
            return cdf_sndr_exact(gamma_th, model);
        case OutageMethod::lemma1_mc:
            return cdf_via_lemma1(gamma_th, model, hf_cdf);
        case OutageMethod::clt:
            return cdf_high_l_clt(gamma_th, model);
        case OutageMethod::fivefm:
            return cdf_high_l_5fm(gamma_th, model);
        case OutageMethod::high_sndr:
            return cdf_high_sndr(gamma_th, model);
    }
    throw domain_error("outage: unknown method");
}

double op_high_snr(double x, const SystemModel& model) {
    model.check();
    const double ceil = model.hw.sndr_ceiling();
    if (x <= 0.0) return 0.0;
    if (x >= ceil) return 1.0;
    const auto f = five_moment_fit(model);
    const double g2 = model.mis.gamma_sq;
    const double b1 = f.a4 + 1.0, b2 = f.a5 + 1.0;
    const double amin = std::min({b1, b2, g2});
    const int ties = (std::abs(b1 - amin) < 1e-9) + (std::abs(b2 - amin) < 1e-9) +
                     (std::abs(g2 - amin) < 1e-9);
    if (ties > 1)
        throw degeneracy_error("op_high_snr: tied leading exponents among {a4+1, a5+1, gamma^2}");
    double r;
    if (amin == b1)
        r = signed_gamma(f.a5 - f.a4) * signed_gamma(g2 - f.a4 - 1.0) * signed_gamma(f.a4 + 1.0);
    else if (amin == b2)
        r = signed_gamma(f.a4 - f.a5) * signed_gamma(g2 - f.a5 - 1.0) * signed_gamma(f.a5 + 1.0);
    else
        r = signed_gamma(f.a4 + 1.0 - g2) * signed_gamma(f.a5 + 1.0 - g2) * std::tgamma(g2);
    const double z = upsilon(x, model) / (model.mis.a_o * f.a2);
    const double val = f.a1 * f.a2 * g2 * std::pow(z, amin) * r /
                       (signed_gamma(g2 + 1.0 - amin) * signed_gamma(f.a3 + 1.0 - amin) *
                        std::tgamma(amin + 1.0));
    return std::clamp(val, 0.0, 1.0);
}

double high_snr_slope(const SystemModel& model) {
    const auto f = five_moment_fit(model);
    return std::min({f.a4 + 1.0, f.a5 + 1.0, model.mis.gamma_sq}) / 2.0;
}

double e_opt(const SystemModel& model) {
    model.check();
    const double g2 = model.mis.gamma_sq;
    double sum = 0.0;
    for (int i = 0; i < model.l_elements; ++i)
        sum += ftr::envelope_moment(1.0, model.hop1[i], *model.series1[i]) *
               ftr::envelope_moment(1.0, model.hop2[i], *model.series2[i]);
    return model.h_l * g2 * model.mis.a_o / (g2 + 1.0) * sum;
}

double e_hfp_sq(const SystemModel& model, HfpRoute route) {
    model.check();
    if (route == HfpRoute::automatic)
        route = model.l_elements <= 3 ? HfpRoute::foxh : HfpRoute::moments;
    if (route == HfpRoute::moments) {
        const auto om = sum_moments(model, 2);
        return om[1] * thz::misalign_moment(2.0, model.mis);
    }
    if (model.l_elements > 3)
        throw cost_guard_error("e_hfp_sq: L > 3 exceeds the regularized-form cost guard");
    foxh::FoxHSpec spec;
    spec.dim = model.l_elements;
    spec.inner.resize(spec.dim);
    spec.series.resize(spec.dim);
    for (int i = 0; i < spec.dim; ++i) add_hf_variable(spec, model, i);
    const double g2 = model.mis.gamma_sq;
    foxh::GammaFactor point_num{g2, std::vector<double>(spec.dim, 1.0), false};
    foxh::GammaFactor point_den{g2 + 1.0, std::vector<double>(spec.dim, 1.0), true};
    foxh::GammaFactor reg_num{2.0, std::vector<double>(spec.dim, -1.0), false};
    foxh::GammaFactor reg_den{0.0, std::vector<double>(spec.dim, -1.0), true};
    spec.outer = {point_num, point_den, reg_num, reg_den};
    spec.contours = hf_contours(model, true);
    spec.quad.step = 0.05;
    std::vector<double> z(spec.dim);
    for (int i = 0; i < spec.dim; ++i)
        z[i] = kRegularizer * model.mis.a_o * sigma_product(model, i);
    const double h = foxh::eval_foxh(spec, z);
    return g2 / (kRegularizer * kRegularizer) * h;
}

double capacity_upper_nonideal(const SystemModel& model) {
    const double gbar = model.h_l * model.h_l * e_hfp_sq(model);
    const double p = model.power_w;
    return std::log2(1.0 + p * gbar / (p * model.hw.kappa_sq() * gbar + model.noise_w));
}

double capacity_upper_ideal(const SystemModel& model) {
    const double gbar = model.h_l * model.h_l * e_hfp_sq(model);
    return std::log2(1.0 + model.power_w * gbar / model.noise_w);
}

double capacity_exact_ideal(const SystemModel& model) {
    model.check();
    const int l = model.l_elements;
    if (l > 2)
        throw cost_guard_error("capacity_exact_ideal: L > 2 exceeds the (L+1)-variate guard");
    foxh::FoxHSpec spec;
    spec.dim = l + 1;
    spec.inner.resize(spec.dim);
    spec.series.resize(spec.dim);
    for (int i = 0; i < l; ++i) add_hf_variable(spec, model, i);
    // the capacity variable: Gamma(-s)^2 Gamma(1+s) / Gamma(1-s)
    spec.inner[l] = {{0.0, -1.0, false}, {0.0, -1.0, false}, {1.0, 1.0, false},
                     {1.0, 1.0, true}};
    const double g2 = model.mis.gamma_sq;
    auto hop_coeffs = [&](double v, double last) {
        std::vector<double> c(l + 1, v);
        c[l] = last;
        return c;
    };
    foxh::GammaFactor point_num{g2, hop_coeffs(1.0, 0.0), false};
    foxh::GammaFactor point_den{g2 + 1.0, hop_coeffs(1.0, 0.0), true};
    foxh::GammaFactor log_num{0.0, hop_coeffs(-0.5, -1.0), false};
    foxh::GammaFactor reg_den{0.0, hop_coeffs(-1.0, 0.0), true};
    spec.outer = {point_num, point_den, log_num, reg_den};
    spec.contours = hf_contours(model, true);
    spec.contours.push_back(-0.5);
    spec.quad.step = 0.05;
    std::vector<double> z(spec.dim);
    const double scale =
        std::sqrt(kRegularizer * model.h_l * model.h_l * model.power_w / model.noise_w);
    for (int i = 0; i < l; ++i) z[i] = model.mis.a_o * scale * sigma_product(model, i);
    z[l] = 1.0 / kRegularizer;
    const double h = foxh::eval_foxh(spec, z);
    // the log kernel is in nats; report bits
    return g2 / 2.0 * h / kLn2;
}

}  // namespace risthz::perf
