#ifndef RISTHZ_SPECFUN_HPP
#define RISTHZ_SPECFUN_HPP

#include <complex>

#include "risthz/precision.hpp"

namespace risthz::specfun {

using cplx = std::complex<double>;

// Principal-branch complex log-gamma. Lanczos approximation for
// Re(z) >= 0.5, reflection below. Throws domain_error at the poles.
cplx ln_gamma(cplx z);

// Real log|Gamma(x)| with the sign of Gamma(x); x not a non-positive integer.
struct SignedLogGamma {
    double log_abs;
    int sign;
    double value() const;  // sign * exp(log_abs)
};
SignedLogGamma ln_gamma_signed(double x);

// Legendre function of the first kind P_nu^mu(x) on x >= 1, integer order,
// via the Gauss-hypergeometric representation. The non-positive-integer
// parameter 1-mu (mu >= 1) goes through the finite-limit form.
double legendre_p(double nu, int mu, double x, const Precision& prec = {});

double erf(double x) noexcept;
double erfc(double x) noexcept;

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_regularized_lower(double a, double x, const Precision& prec = {});

// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0 (Pfaff-transformed when
// needed); c must not be a non-positive integer.
double hyp2f1_nonpos(double a, double b, double c, double z, const Precision& prec = {});

}  // namespace risthz::specfun

#endif
