#ifndef RISTHZ_THZ_CHANNEL_HPP
#define RISTHZ_THZ_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "risthz/rng.hpp"

namespace risthz::thz {

// The absorption model is validated for 275-400 GHz only; outside that band
// the caller is told to use a line-by-line database instead.
constexpr double kBandLoHz = 275e9;
constexpr double kBandHiHz = 400e9;
constexpr double kSpeedOfLight = 3e8;  // m/s, value used throughout

struct Environment {
    double temperature_c;
    double pressure_pa;
    double rel_humidity;  // fraction in [0, 1]
    void check() const;
};

struct LinkGeometry {
    double freq_hz;
    double d1_m;  // source -> RIS
    double d2_m;  // RIS -> destination
    double gt;    // linear antenna gains
    double gr;
    void check() const;
};

// Pointing-error block. Either derived from beam geometry or set directly
// (several reference configurations quote A_o and gamma themselves).
struct Misalignment {
    double detect_radius_a = 0.0;
    double beam_radius_wd = 0.0;
    double jitter_sigma_s = 0.0;
    double u = 0.0;
    double w_eq_sq = 0.0;
    double a_o = 1.0;      // fraction collected at perfect alignment
    double gamma_sq = 1.0; // power-law exponent

    static Misalignment from_geometry(double detect_radius_a, double beam_radius_wd,
                                      double jitter_sigma_s);
    static Misalignment from_direct(double a_o, double gamma_sq);
};

// Water-vapor parameter v of the absorption model. Temperature enters in
// degrees Celsius exactly as the model is stated; the formula has a pole at
// T = -240.97 C.
double vapor_param(const Environment& env);

// Absorption coefficient kappa_alpha(f) in 1/m over the validated band. The
// two resonance terms use the wavenumber f/(100 c) so their centers line up
// with the cm^-1 constants; the polynomial floor acts on f in Hz.
double absorption_coefficient(double freq_hz, const Environment& env);

// Friis propagation gain  c^2 sqrt(Gt Gr) / ((4 pi f)^2 d1 d2).
double propagation_gain(const LinkGeometry& geom);

// Propagation times molecular absorption: h_FL * exp(-kappa (d1+d2)/2).
double path_gain(const LinkGeometry& geom, const Environment& env);

double misalign_pdf(double x, const Misalignment& mis);
double misalign_cdf(double x, const Misalignment& mis);
// E[h_P^s] = gamma^2/(gamma^2+s) * A_o^s, s > -gamma^2
double misalign_moment(double s, const Misalignment& mis);

void misalign_sample_block(const Misalignment& mis, rng::Stream& stream, double* out,
                           std::size_t n);
std::vector<double> misalign_sample(const Misalignment& mis, std::uint64_t seed, std::size_t n);

}  // namespace risthz::thz

#endif
