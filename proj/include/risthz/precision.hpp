#ifndef RISTHZ_PRECISION_HPP
#define RISTHZ_PRECISION_HPP

#include <cstddef>

#include "risthz/error.hpp"

namespace risthz {

// Tolerance bundle shared by the series and quadrature kernels.
struct Precision {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_terms = 500;

    void check() const {
        if (!(rel_tol > 0) || !(abs_tol > 0) || max_terms < 1)
            throw domain_error("Precision: rel_tol/abs_tol must be > 0 and max_terms >= 1");
    }

    // Two consecutive partial sums closer than this declare convergence.
    bool converged(double delta, double sum) const {
        return (delta < 0 ? -delta : delta) < rel_tol * (sum < 0 ? -sum : sum) + abs_tol;
    }
};

}  // namespace risthz

#endif
