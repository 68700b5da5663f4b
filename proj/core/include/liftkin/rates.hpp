#pragma once

#include <functional>
#include <optional>
#include <utility>

namespace liftkin {

/// Inputs of the abstract convergence rate.
struct RateInputs {
    double P_v;  ///< microscopic coercivity
    double R;    ///< H^{-1} bound constant
    double C0T;  ///< divergence-equation constant (H^1 side)
    double C1T;  ///< divergence-equation constant (time-derivative side)
    double T;    ///< averaging window
};

/// Two conventions for the prefactor C: the theorem-level statement
/// C = exp(T lambda) and the norm-level constant C = exp(T lambda / 2) that
/// the energy estimate actually yields. Default follows the statement.
enum class PrefactorConvention { TheoremStatement, NormLevel };

struct TheoremRate {
    double lambda;
    double C;
};

/// lambda = 2 P_v / (1 + (C1T + C0T sqrt(R P_v))^2), C per the convention.
TheoremRate theorem_rate(const RateInputs& in,
                         PrefactorConvention convention = PrefactorConvention::TheoremStatement);

struct WindowMinimum {
    double T_star;
    double lambda;
    double C;
    bool flat_objective = false;
    bool non_unimodal_warning = false;
};

/// Minimize C1T(T) + C0T(T) sqrt(R P_v) over T in [T_range.first,
/// T_range.second] by golden section (relative tolerance 1e-8) after a grid
/// pre-scan that flags multiple local minima. A flat objective returns the
/// range midpoint.
WindowMinimum minimize_over_T(const std::function<double(double)>& C0T_fn,
                              const std::function<double(double)>& C1T_fn,
                              double P_v, double R, std::pair<double, double> T_range,
                              PrefactorConvention convention = PrefactorConvention::TheoremStatement);

/// Helper pair for the kinetic-Langevin window constants with convex target:
/// C0T = C0 (T + P_x^{-1/2}), C1T = C1 (1 + 1/(T sqrt(P_x))). The absolute
/// constants default to 1 and are never invented by the module.
std::function<double(double)> langevin_C0T(double P_x, double C0 = 1.0);
std::function<double(double)> langevin_C1T(double P_x, double C1 = 1.0);

/// All scalars entering the adaptive-Langevin constants. T is the averaging
/// window; leave it unset for the bound that pins T^2 = pi^2 / P_x.
struct ALDConfig {
    double P_q;     ///< spectral gap of grad*grad in q
    double d;       ///< spatial dimension
    double epsilon; ///< feedback time scale
    double gamma;   ///< friction
    double M;       ///< Hessian lower bound, >= 0
    double L;       ///< Laplacian growth constant
    std::optional<double> T;

    void validate() const;
};

struct ALDConstants {
    double P_x;
    double c0;
    double c1;
    double C0T_sq;
    double C1T_sq;
};

/// P_x = min(P_q, 2d/eps^2); c0 = 2T^2 + 43/P_x;
/// c1 = 290 + (991/T^2)/P_x + 43 max(1/P_x, T^2/pi^2) M;
/// C0T^2 = 2 c0; C1T^2 = 314 (c1 + (1/eps^2 + L) c0). Requires cfg.T set.
ALDConstants ald_constants(const ALDConfig& cfg);

/// Printed lower bound with T^2 = pi^2/P_x:
/// lambda >= 2 gamma / (61388 + (1/P_q + eps^2/(2d)) (378 gamma^2 + 6751 M
///           + 9891 (1/eps^2 + L))). Ignores cfg.T.
double ald_rate_bound(const ALDConfig& cfg);

struct ALDOptimalParams {
    double eps_sq;
    double gamma;
    double lambda; ///< P_q / (66334 sqrt(P_q + M + L)), dimension independent
};

/// gamma = sqrt(P_q + M + L), eps^2 = sqrt(d / (P_q (M + L + gamma^2))).
ALDOptimalParams ald_optimal_params(double P_q, double d, double M, double L);

} // namespace liftkin
