#ifndef RISTHZ_ERROR_HPP
#define RISTHZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace risthz {

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Series or quadrature failed to reach the requested tolerance.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// No valid Mellin-Barnes contour separates the pole sets.
class contour_error : public std::runtime_error {
public:
    explicit contour_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Request exceeds a configured cost guard (dimension, lattice size, ...).
class cost_guard_error : public std::runtime_error {
public:
    explicit cost_guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A formula assumed simple poles / distinct coefficients and the inputs tie.
class degeneracy_error : public std::runtime_error {
public:
    explicit degeneracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Overflow or loss of validity for extreme parameters.
class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed run configuration (CLI layer).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace risthz

#endif
