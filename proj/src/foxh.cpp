#include "risthz/foxh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "risthz/error.hpp"
#include "risthz/specfun.hpp"

namespace risthz::foxh {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxOuter = 4;

void validate(const FoxHSpec& spec, const std::vector<double>& args) {
    if (spec.dim < 1) throw domain_error("foxh: dim must be >= 1");
    if (spec.dim > 4)
        throw cost_guard_error("foxh: dim > 4 exceeds the evaluation cost guard");
    if (static_cast<int>(spec.inner.size()) != spec.dim ||
        (!spec.series.empty() && static_cast<int>(spec.series.size()) != spec.dim))
        throw domain_error("foxh: inner/series lists must have one entry per variable");
    if (static_cast<int>(args.size()) != spec.dim)
        throw domain_error("foxh: argument count mismatch");
    for (double z : args)
        if (!(z > 0.0)) throw domain_error("foxh: arguments must be > 0");
    for (const auto& f : spec.outer)
        if (static_cast<int>(f.coeffs.size()) != spec.dim)
            throw domain_error("foxh: outer factor coefficient length mismatch");
    if (spec.outer.size() > kMaxOuter)
        throw domain_error("foxh: at most 4 outer factors supported");
    if (!(spec.quad.step > 0.0)) throw domain_error("foxh: step must be > 0");
    if (spec.quad.half_width / spec.quad.step > 1e4)
        throw cost_guard_error("foxh: half_width/step exceeds 1e4 cost guard");
}

struct Axis {
    std::vector<cplx> val;   // normalized factor values over the kept window
    std::vector<double> mag; // |val|
    std::vector<int> kidx;   // node index in units of the step (t = kidx * h)
    double log_scale = 0.0;  // ln of the divided-out normalization
};

// per-variable factor value at s = c + i t (outer factors excluded)
cplx axis_value(const FoxHSpec& spec, int var, double lnz, cplx s) {
    cplx log_acc = s * lnz * (spec.arg_exponents.empty() ? 1.0 : spec.arg_exponents[var]);
    for (const auto& f : spec.inner[var]) {
        const cplx lg = specfun::ln_gamma(cplx(f.offset, 0.0) + f.coeff * s);
        log_acc += f.denominator ? -lg : lg;
    }
    cplx v = std::exp(log_acc);
    if (!spec.series.empty()) {
        for (const auto& ser : spec.series[var]) {
            cplx acc(0.0, 0.0);
            int quiet = 0;
            for (std::size_t j = 0; j < ser.log_weights.size(); ++j) {
                const cplx term = std::exp(
                    cplx(ser.log_weights[j], 0.0) +
                    specfun::ln_gamma(cplx(ser.offset + static_cast<double>(j), 0.0) +
                                      ser.scale * s));
                acc += term;
                if (std::abs(term) < 1e-18 * std::abs(acc)) {
                    if (++quiet >= 3) break;
                } else {
                    quiet = 0;
                }
            }
            v *= acc;
        }
    }
    return v;
}

Axis build_axis(const FoxHSpec& spec, int var, double lnz, double c, double step,
                double half_width, double grow_rate, double trunc_eps) {
    const int n = static_cast<int>(std::floor(half_width / step));
    std::vector<cplx> raw(2 * n + 1);
    double max_mag = 0.0;
    for (int k = -n; k <= n; ++k) {
        const cplx v = axis_value(spec, var, lnz, cplx(c, k * step));
        raw[k + n] = v;
        max_mag = std::max(max_mag, std::abs(v));
    }
    if (max_mag == 0.0 || !std::isfinite(max_mag))
        throw convergence_error("foxh: axis values vanished or overflowed");
    // keep nodes that can still matter after granting the outer denominators'
    // worst-case growth along this axis
    const double log_cut = std::log(trunc_eps) + std::log(max_mag);
    int lo = 0, hi = 2 * n;
    auto keep = [&](int idx) {
        const double mag = std::abs(raw[idx]);
        const double t = std::abs((idx - n) * step);
        return mag > 0.0 && std::log(mag) + grow_rate * t >= log_cut;
    };
    while (lo < n && !keep(lo)) ++lo;
    while (hi > n && !keep(hi)) --hi;
    Axis ax;
    ax.log_scale = std::log(max_mag);
    const double inv = 1.0 / max_mag;
    ax.val.reserve(hi - lo + 1);
    ax.mag.reserve(hi - lo + 1);
    ax.kidx.reserve(hi - lo + 1);
    for (int k = lo; k <= hi; ++k) {
        ax.val.push_back(raw[k] * inv);
        ax.mag.push_back(std::abs(ax.val.back()));
        ax.kidx.push_back(k - n);
    }
    return ax;
}

// one outer gamma factor, either gridded (argument imag part on a lattice of
// pitch |c_min| h, values pre-tabulated) or evaluated directly at the leaves
struct OuterEval {
    bool gridded = false;
    double sign = 1.0;       // +1 numerator, -1 denominator
    double re0 = 0.0;        // real part of the argument on the contour
    double pitch = 0.0;      // lattice pitch of the imaginary part
    std::vector<int> mult;   // per-variable integer multiplier (kidx units)
    std::vector<double> coeffs;
    long table_off = 0;
    std::vector<cplx> table; // exp(sign * ln_gamma(re0 + i pitch k))
};

struct Pass {
    cplx sum{0.0, 0.0};
    std::size_t points = 0;
};

std::vector<OuterEval> prepare_outer(const FoxHSpec& spec, const std::vector<Axis>& axes,
                                     const std::vector<double>& contours, double step) {
    std::vector<OuterEval> evs;
    for (const auto& f : spec.outer) {
        OuterEval ev;
        ev.sign = f.denominator ? -1.0 : 1.0;
        ev.coeffs = f.coeffs;
        ev.re0 = f.offset;
        for (int i = 0; i < spec.dim; ++i) ev.re0 += f.coeffs[i] * contours[i];
        double cmin = kPosInf;
        for (double c : f.coeffs)
            if (c != 0.0) cmin = std::min(cmin, std::abs(c));
        bool lattice = std::isfinite(cmin);
        long span = 0;
        if (lattice) {
            ev.pitch = cmin * step;
            ev.mult.resize(spec.dim, 0);
            for (int i = 0; i < spec.dim; ++i) {
                const double r = f.coeffs[i] / cmin;
                const long ri = std::lround(r);
                if (std::abs(r - ri) > 1e-9) {
                    lattice = false;
                    break;
                }
                ev.mult[i] = static_cast<int>(ri);
                long max_k = 0;
                for (int kk : axes[i].kidx) max_k = std::max(max_k, std::labs(kk));
                span += std::labs(ri) * max_k;
            }
        }
        if (lattice && span <= 4000000) {
            ev.gridded = true;
            ev.table_off = span;
            ev.table.resize(2 * span + 1);
            for (long k = -span; k <= span; ++k) {
                const cplx lg = specfun::ln_gamma(cplx(ev.re0, ev.pitch * k));
                ev.table[k + span] = std::exp(ev.sign * lg);
            }
        }
        evs.push_back(std::move(ev));
    }
    return evs;
}

void tensor_sum(const FoxHSpec& spec, const std::vector<Axis>& axes,
                const std::vector<double>& contours, double step,
                const std::vector<OuterEval>& outer, int level, cplx weight, double wmag,
                const std::array<long, kMaxOuter>& grid_idx,
                const std::array<cplx, kMaxOuter>& direct_arg, double trunc_eps, Pass& pass) {
    const Axis& ax = axes[level];
    const bool leaf = (level == spec.dim - 1);
    const std::size_t nf = outer.size();
    for (std::size_t k = 0; k < ax.val.size(); ++k) {
        const double mag = wmag * ax.mag[k];
        if (mag < trunc_eps) continue;
        const cplx w = weight * ax.val[k];
        std::array<long, kMaxOuter> gi = grid_idx;
        std::array<cplx, kMaxOuter> da = direct_arg;
        for (std::size_t f = 0; f < nf; ++f) {
            if (outer[f].gridded)
                gi[f] += static_cast<long>(outer[f].mult[level]) * ax.kidx[k];
            else
                da[f] += cplx(0.0, outer[f].coeffs[level] * ax.kidx[k] * step);
        }
        if (!leaf) {
            tensor_sum(spec, axes, contours, step, outer, level + 1, w, mag, gi, da, trunc_eps,
                       pass);
            continue;
        }
        cplx g(1.0, 0.0);
        for (std::size_t f = 0; f < nf; ++f) {
            if (outer[f].gridded) {
                g *= outer[f].table[gi[f] + outer[f].table_off];
            } else {
                const cplx lg = specfun::ln_gamma(da[f]);
                g *= std::exp(outer[f].sign > 0 ? lg : -lg);
            }
        }
        pass.sum += w * g;
        ++pass.points;
    }
}

double run_pass(const FoxHSpec& spec, const std::vector<double>& args,
                const std::vector<double>& contours, double step, double half_width,
                std::size_t& points, double& imag_rel) {
    // Worst-case growth the outer denominator gammas can add per axis. A
    // numerator factor with the same |coeffs| pattern cancels one denominator
    // asymptotically (their ratio is polynomial), so such pairs are credited.
    std::vector<bool> matched(spec.outer.size(), false);
    for (std::size_t fn = 0; fn < spec.outer.size(); ++fn) {
        if (spec.outer[fn].denominator) continue;
        for (std::size_t fd = 0; fd < spec.outer.size(); ++fd) {
            if (!spec.outer[fd].denominator || matched[fd]) continue;
            bool same = true;
            for (int i = 0; i < spec.dim; ++i)
                same &= std::abs(std::abs(spec.outer[fn].coeffs[i]) -
                                 std::abs(spec.outer[fd].coeffs[i])) < 1e-12;
            if (same) {
                matched[fd] = true;
                break;
            }
        }
    }
    std::vector<double> grow(spec.dim, 0.0);
    for (std::size_t f = 0; f < spec.outer.size(); ++f)
        if (spec.outer[f].denominator && !matched[f])
            for (int i = 0; i < spec.dim; ++i)
                grow[i] += 0.5 * kPi * std::abs(spec.outer[f].coeffs[i]);
    std::vector<Axis> axes;
    axes.reserve(spec.dim);
    double log_scale = 0.0;
    for (int i = 0; i < spec.dim; ++i) {
        axes.push_back(build_axis(spec, i, std::log(args[i]), contours[i], step, half_width,
                                  grow[i], spec.quad.trunc_eps));
        log_scale += axes.back().log_scale;
    }
    const auto outer = prepare_outer(spec, axes, contours, step);
    Pass pass;
    std::array<long, kMaxOuter> gi{};
    std::array<cplx, kMaxOuter> da{};
    for (std::size_t f = 0; f < outer.size(); ++f)
        if (!outer[f].gridded) da[f] = cplx(outer[f].re0, 0.0);
    tensor_sum(spec, axes, contours, step, outer, 0, cplx(1.0, 0.0), 1.0, gi, da,
               spec.quad.trunc_eps, pass);
    points = pass.points;
    const double norm = std::pow(step / (2.0 * kPi), spec.dim);
    const cplx total = pass.sum * std::exp(cplx(log_scale, 0.0)) * norm;
    imag_rel = std::abs(total.imag()) / (std::abs(total.real()) + 1e-300);
    return total.real();
}

}  // namespace

std::vector<double> choose_contours(const FoxHSpec& spec) {
    std::vector<double> cs(spec.dim);
    for (int i = 0; i < spec.dim; ++i) {
        double left = kNegInf, right = kPosInf;
        for (const auto& f : spec.inner[i]) {
            if (f.denominator || f.coeff == 0.0) continue;
            const double edge = -f.offset / f.coeff;
            if (f.coeff > 0.0)
                left = std::max(left, edge);
            else
                right = std::min(right, edge);
        }
        if (!spec.series.empty() && !spec.series[i].empty())
            for (const auto& ser : spec.series[i])
                if (ser.scale > 0.0) left = std::max(left, -ser.offset / ser.scale);
        if (left >= right)
            throw contour_error("choose_contours: pole sets of variable " + std::to_string(i) +
                                " cannot be separated");
        if (std::isinf(left) && std::isinf(right))
            cs[i] = 0.0;
        else if (std::isinf(left))
            cs[i] = right - 1.0;
        else if (std::isinf(right))
            cs[i] = left + 1.0;
        else
            cs[i] = 0.5 * (left + right);
    }
    // outer numerator gammas must stay right of their poles at the chosen point
    for (const auto& f : spec.outer) {
        if (f.denominator) continue;
        double arg = f.offset;
        for (int i = 0; i < spec.dim; ++i) arg += f.coeffs[i] * cs[i];
        if (arg <= 0.0)
            throw contour_error("choose_contours: outer factor argument non-positive at the "
                                "midpoint contour");
    }
    return cs;
}

EvalResult eval_foxh_detailed(const FoxHSpec& spec, const std::vector<double>& args) {
    validate(spec, args);
    std::vector<double> contours = spec.contours;
    if (contours.empty()) contours = choose_contours(spec);
    if (static_cast<int>(contours.size()) != spec.dim)
        throw domain_error("foxh: contour count mismatch");

    EvalResult res;
    double step = spec.quad.step;
    double half_width = spec.quad.half_width;
    double prev = run_pass(spec, args, contours, step, half_width, res.points, res.imag_rel);
    int bad_streak = 0;
    for (int r = 0; r < spec.quad.max_refine; ++r) {
        step *= 0.5;
        half_width *= 2.0;
        if (half_width / step > 1e4) half_width = 1e4 * step;
        double imag_rel = 0.0;
        std::size_t pts = 0;
        const double cur = run_pass(spec, args, contours, step, half_width, pts, imag_rel);
        res.refinements = r + 1;
        const double delta = std::abs(cur - prev);
        const bool ok =
            delta <= spec.quad.rel_tol * std::max(std::abs(cur), std::abs(prev)) + 1e-280;
        prev = cur;
        res.points = pts;
        res.imag_rel = imag_rel;
        if (ok) {
            res.converged = true;
            break;
        }
        if (++bad_streak >= 2)
            throw convergence_error(
                "foxh: window refinement failed to stabilize twice in a row");
    }
    res.value = prev;
    if (res.imag_rel > 1e-8 && std::abs(res.value) > 1e-250)
        throw convergence_error("foxh: imaginary residue " + std::to_string(res.imag_rel) +
                                " above 1e-8 of the real part");
    if (!res.converged && spec.quad.max_refine > 0)
        throw convergence_error("foxh: quadrature did not reach the requested tolerance");
    return res;
}

double eval_foxh(const FoxHSpec& spec, const std::vector<double>& args) {
    return eval_foxh_detailed(spec, args).value;
}

FoxHSpec meijer_to_foxh(const MeijerGSpec& g, const QuadSpec& quad) {
    if (g.m < 0 || g.m > g.q || g.n < 0 || g.n > g.p ||
        static_cast<int>(g.a.size()) != g.p || static_cast<int>(g.b.size()) != g.q)
        throw domain_error("meijer_to_foxh: invalid (m,n,p,q) block");
    FoxHSpec spec;
    spec.dim = 1;
    spec.quad = quad;
    spec.inner.resize(1);
    for (int j = 0; j < g.m; ++j) spec.inner[0].push_back({g.b[j], -1.0, false});
    for (int j = 0; j < g.n; ++j) spec.inner[0].push_back({1.0 - g.a[j], 1.0, false});
    for (int j = g.m; j < g.q; ++j) spec.inner[0].push_back({1.0 - g.b[j], 1.0, true});
    for (int j = g.n; j < g.p; ++j) spec.inner[0].push_back({g.a[j], -1.0, true});
    return spec;
}

double eval_meijer_g(const MeijerGSpec& g, double x, const QuadSpec& quad) {
    const FoxHSpec spec = meijer_to_foxh(g, quad);
    return eval_foxh(spec, {x});
}

}  // namespace risthz::foxh
