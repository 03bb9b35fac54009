#pragma once

#include <stdexcept>
#include <string>

namespace sbrdm {

// Argument outside the domain of an operation (negative frequency, tau outside [0, beta], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The polaron renormalization integral diverges (Ohmic bath).
class DivergentRenormalization : public std::runtime_error {
public:
    explicit DivergentRenormalization(const std::string& what)
        : std::runtime_error("DivergentRenormalization: " + what) {}
};

// A closed form exists only for another spectral family.
class UnsupportedBath : public std::runtime_error {
public:
    explicit UnsupportedBath(const std::string& what)
        : std::runtime_error("UnsupportedBath: " + what) {}
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double partial_estimate, double error_estimate)
        : std::runtime_error("ConvergenceError: " + what)
        , partial_estimate_(partial_estimate)
        , error_estimate_(error_estimate) {}

    double partial_estimate() const noexcept { return partial_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_estimate_;
    double error_estimate_;
};

// The eigenbasis of a (near) multiple of the identity is undefined.
class DegenerateBasis : public std::runtime_error {
public:
    explicit DegenerateBasis(const std::string& what)
        : std::runtime_error("DegenerateBasis: " + what) {}
};

// Monte Carlo diagnostics failed (acceptance too low, chains disagree).
class QualityError : public std::runtime_error {
public:
    explicit QualityError(const std::string& what)
        : std::runtime_error("QualityError: " + what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what)
        : std::runtime_error("ConfigError: " + what) {}
};

}  // namespace sbrdm
