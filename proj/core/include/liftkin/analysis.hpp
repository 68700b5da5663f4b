#pragma once

#include "liftkin/dynamics.hpp"
#include "liftkin/linalg.hpp"
#include "liftkin/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace liftkin {

struct GaussianLaw {
    Vector mean;
    Matrix cov;

    void validate() const; ///< symmetric within 1e-12, eigenvalues >= -1e-12
};

/// Stationary law of a linear-drift block (zero mean, Lyapunov covariance).
GaussianLaw stationary_law(const DriftSystem& sys);

/// mean -> e^{tA} mean, cov -> e^{tA} cov e^{tA^T} + Q_t.
GaussianLaw propagate_law(const DriftSystem& sys, const GaussianLaw& law0, double t);

/// Squared L^2(target) norm of the density ratio minus one (the chi^2
/// divergence), in closed form between Gaussians. Requires
/// 2 cov^{-1} - target_cov^{-1} positive definite, else NotSquareIntegrable.
double chi_square_norm(const GaussianLaw& law, const GaussianLaw& target);

struct DecayCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> std_errors; ///< optional, empty for exact curves
    double fitted_rate = 0.0;       ///< lambda-hat from the log-linear fit
    double fitted_prefactor = 0.0;  ///< C-hat = exp(intercept)
    double fit_window_lo = 0.0;
    double fit_window_hi = 0.0;
};

/// Least-squares exponential fit log(value) ~ log(C) - lambda t over the
/// window (defaults to the last half of the grid, which suppresses the
/// polynomial transient of defective spectra). Fills the fit fields in place.
void fit_exponential(DecayCurve& curve,
                     std::optional<std::pair<double, double>> window = std::nullopt);

/// L^2 distance-to-equilibrium curve of the propagated Gaussian law:
/// value(t) = sqrt(chi_square_norm(law_t, target)).
DecayCurve decay_curve(const DriftSystem& sys, const GaussianLaw& law0,
                       const GaussianLaw& target, const std::vector<double>& times,
                       std::optional<std::pair<double, double>> fit_window = std::nullopt);

/// Sliding window average H(t) = (1/T) int_t^{t+T} value(s)^2 ds by exact
/// trapezoid integration of the squared curve (linear interpolation at the
/// window ends). Throws WindowOutOfRange if no window fits in the grid.
DecayCurve time_averaged_energy(const DecayCurve& curve, double T);

using Observable = std::function<double(std::span<const double>)>;

/// Stationary autocovariance of g along the ensemble at the given grid-index
/// lags, averaged over trajectories and time origins, with jackknife standard
/// errors over trajectories. Requires a uniform time grid.
DecayCurve empirical_autocov(const Ensemble& ens, const Observable& g,
                             const std::vector<int>& lags);

} // namespace liftkin
