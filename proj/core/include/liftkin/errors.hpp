#pragma once

#include <stdexcept>
#include <string>

namespace liftkin {

/// Invalid scalar or structural parameter (non-positive rate, bad dimension, ...).
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested operation is not defined for this dynamics (e.g. a linear drift
/// matrix for an event-driven or nonlinear process).
class UnsupportedDynamics : public std::invalid_argument {
public:
    explicit UnsupportedDynamics(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix expected to be (semi)definite failed its factorization even after
/// the documented regularization.
class NonPSD : public std::runtime_error {
public:
    explicit NonPSD(const std::string& what) : std::runtime_error(what) {}
};

/// The squared density ratio is not integrable (2*cov^{-1} - target_cov^{-1}
/// is not positive definite).
class NotSquareIntegrable : public std::runtime_error {
public:
    explicit NotSquareIntegrable(const std::string& what) : std::runtime_error(what) {}
};

/// A decay curve never dropped below the requested threshold within the horizon.
class NoCrossing : public std::runtime_error {
public:
    explicit NoCrossing(const std::string& what) : std::runtime_error(what) {}
};

/// Window average requested outside the sampled time range.
class WindowOutOfRange : public std::out_of_range {
public:
    explicit WindowOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// Too few trajectory/time-origin pairs for a meaningful estimate.
class InsufficientData : public std::runtime_error {
public:
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

/// A thinning proposal exceeded its user-supplied envelope rate.
class EnvelopeViolation : public std::runtime_error {
public:
    explicit EnvelopeViolation(const std::string& what) : std::runtime_error(what) {}
};

} // namespace liftkin
