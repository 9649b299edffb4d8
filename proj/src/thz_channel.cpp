#include "risthz/thz_channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "risthz/error.hpp"
#include "risthz/kern.hpp"
#include "risthz/specfun.hpp"

namespace risthz::thz {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

void Environment::check() const {
    if (!(pressure_pa > 0.0)) throw domain_error("Environment: pressure must be > 0");
    if (!(rel_humidity >= 0.0 && rel_humidity <= 1.0))
        throw domain_error("Environment: rel_humidity must be in [0,1]");
    if (!(temperature_c > -240.97))
        throw domain_error("Environment: temperature at or below the -240.97 C pole");
}

void LinkGeometry::check() const {
    if (!(freq_hz >= kBandLoHz && freq_hz <= kBandHiHz))
        throw domain_error("LinkGeometry: frequency outside the validated 275-400 GHz band "
                           "(line-by-line database input is not supported)");
    if (!(d1_m > 0.0 && d2_m > 0.0)) throw domain_error("LinkGeometry: distances must be > 0");
    if (!(gt > 0.0 && gr > 0.0)) throw domain_error("LinkGeometry: antenna gains must be > 0");
}

Misalignment Misalignment::from_geometry(double a, double wd, double sigma_s) {
    if (!(a > 0.0 && wd > 0.0 && sigma_s > 0.0))
        throw domain_error("Misalignment: radii and jitter must be > 0");
    Misalignment m;
    m.detect_radius_a = a;
    m.beam_radius_wd = wd;
    m.jitter_sigma_s = sigma_s;
    m.u = kSqrtPi * a / (std::sqrt(2.0) * wd);
    const double erf_u = specfun::erf(m.u);
    m.a_o = erf_u * erf_u;
    m.w_eq_sq = wd * wd * kSqrtPi * erf_u / (2.0 * m.u * std::exp(-m.u * m.u));
    m.gamma_sq = m.w_eq_sq / (4.0 * sigma_s * sigma_s);
    return m;
}

Misalignment Misalignment::from_direct(double a_o, double gamma_sq) {
    if (!(a_o > 0.0 && a_o <= 1.0)) throw domain_error("Misalignment: A_o must be in (0,1]");
    if (!(gamma_sq > 0.0)) throw domain_error("Misalignment: gamma^2 must be > 0");
    Misalignment m;
    m.a_o = a_o;
    m.gamma_sq = gamma_sq;
    return m;
}

double vapor_param(const Environment& env) {
    env.check();
    return env.rel_humidity * (0.06116 / env.pressure_pa + 2.1148e-7) *
           std::exp(17.502 * env.temperature_c / (240.97 + env.temperature_c));
}

double absorption_coefficient(double freq_hz, const Environment& env) {
    if (!(freq_hz >= kBandLoHz && freq_hz <= kBandHiHz))
        throw domain_error("absorption_coefficient: frequency outside 275-400 GHz "
                           "(line-by-line database input is not supported)");
    const double v = vapor_param(env);
    const double A = 0.2205 * v * (0.1303 * v + 0.0294);
    const double B = (0.4093 * v + 0.0925) * (0.4093 * v + 0.0925);
    const double C = 2.014 * v * (0.1702 * v + 0.0303);
    const double D = (0.537 * v + 0.0956) * (0.537 * v + 0.0956);
    const double w = freq_hz / (100.0 * kSpeedOfLight);  // cm^-1 wavenumber
    const double c1 = 10.835, c2 = 12.664;
    const double poly = ((5.54e-37 * freq_hz - 3.94e-25) * freq_hz + 9.06e-14) * freq_hz -
                        6.36e-3;
    return A / (B + (w - c1) * (w - c1)) + C / (D + (w - c2) * (w - c2)) + poly;
}

double propagation_gain(const LinkGeometry& geom) {
    geom.check();
    const double denom = 4.0 * kPi * geom.freq_hz;
    return kSpeedOfLight * kSpeedOfLight * std::sqrt(geom.gt * geom.gr) /
           (denom * denom * geom.d1_m * geom.d2_m);
}

double path_gain(const LinkGeometry& geom, const Environment& env) {
    const double kappa = absorption_coefficient(geom.freq_hz, env);
    return propagation_gain(geom) * std::exp(-0.5 * kappa * (geom.d1_m + geom.d2_m));
}

double misalign_pdf(double x, const Misalignment& mis) {
    if (x < 0.0 || x > mis.a_o) throw domain_error("misalign_pdf: x outside [0, A_o]");
    return mis.gamma_sq * std::pow(mis.a_o, -mis.gamma_sq) * std::pow(x, mis.gamma_sq - 1.0);
}

double misalign_cdf(double x, const Misalignment& mis) {
    if (x < 0.0 || x > mis.a_o) throw domain_error("misalign_cdf: x outside [0, A_o]");
    return std::pow(x / mis.a_o, mis.gamma_sq);
}

double misalign_moment(double s, const Misalignment& mis) {
    if (!(s > -mis.gamma_sq)) throw domain_error("misalign_moment: diverges for s <= -gamma^2");
    return mis.gamma_sq / (mis.gamma_sq + s) * std::pow(mis.a_o, s);
}

void misalign_sample_block(const Misalignment& mis, rng::Stream& stream, double* out,
                           std::size_t n) {
    // inverse CDF: x = A_o U^{1/gamma^2}
    constexpr std::size_t B = 4096;
    std::vector<double> u(B), lg(B);
    const double inv_g2 = 1.0 / mis.gamma_sq;
    std::size_t done = 0;
    while (done < n) {
        const std::size_t b = std::min(B, n - done);
        for (std::size_t i = 0; i < b; ++i) u[i] = stream.uniform_open();
        kern::log_v(u.data(), lg.data(), b);
        for (std::size_t i = 0; i < b; ++i) lg[i] *= inv_g2;
        kern::exp_v(lg.data(), out + done, b);
        for (std::size_t i = 0; i < b; ++i) out[done + i] *= mis.a_o;
        done += b;
    }
}

std::vector<double> misalign_sample(const Misalignment& mis, std::uint64_t seed, std::size_t n) {
    rng::Stream stream(seed);
    std::vector<double> out(n);
    misalign_sample_block(mis, stream, out.data(), n);
    return out;
}

}  // namespace risthz::thz
