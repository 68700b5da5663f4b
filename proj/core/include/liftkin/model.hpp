#pragma once

#include "liftkin/linalg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace liftkin {

/// Gaussian target N(0, m^{-1} I_d): per-coordinate precision m, dimension d.
struct GaussianTarget {
    double m = 1.0;
    int d = 1;

    GaussianTarget(double m_, int d_);
};

/// Non-quadratic potential together with the analytic constants the rate
/// formulas consume: Hessian lower bound M (grad^2 U >= -M), Laplacian growth
/// Delta U <= L d + a |grad U|^2 with a in (0,1/2), and the spectral gap P_q
/// of grad* grad on L^2(e^{-U}).
struct GeneralPotential {
    std::function<Vector(const Vector&)> gradient;
    double hessian_lower_bound = 0.0; ///< M >= 0
    double laplacian_growth = 1.0;    ///< L > 0
    double laplacian_growth_a = 0.25; ///< a in (0, 1/2); stored, not consumed by any formula
    double poincare_gap = 1.0;        ///< P_q > 0
    /// Optional upper bound on ||grad^2 U||_op, used to build thinning
    /// envelopes for event-driven simulation of non-quadratic targets.
    std::optional<double> hessian_norm_bound;

    void validate() const;
};

// --- dynamics catalog -------------------------------------------------------

struct Overdamped {};
struct KineticLangevin {
    double gamma;
};
struct RandomizedHMC {
    double gamma; ///< velocity refresh rate
};
struct ZigZag {
    double gamma; ///< velocity refresh rate (flips are driven by the potential)
};
struct AdaptiveLangevin {
    double epsilon;
    double gamma;
};
struct GeneralizedLangevin {
    double lambda_c; ///< coupling between velocity and memory variable
    double gamma;    ///< friction on the memory variable
};

using DynamicsKind = std::variant<Overdamped, KineticLangevin, RandomizedHMC,
                                  ZigZag, AdaptiveLangevin, GeneralizedLangevin>;

std::string kind_name(const DynamicsKind& kind);

/// Throws InvalidParameter if any rate/friction parameter is not > 0.
void validate_kind(const DynamicsKind& kind);

/// Full state dimension for spatial dimension d: d / 2d / 2d+1 / 3d.
int state_dimension(const DynamicsKind& kind, int d);

/// Per-coordinate linear SDE block dX = A X dt + Sigma dW for the Gaussian
/// target. For d > 1 the dynamics factorizes over coordinates, so A is the
/// 1-D block with the scalar precision m.
struct DriftSystem {
    Matrix A;
    Matrix Sigma;
    std::vector<char> blocks; ///< per-row label: 'x', 'v' or 'z'
    double m = 1.0;           ///< target precision the block was built with
};

/// Assemble the drift block for a linear-drift dynamics. Only Overdamped,
/// KineticLangevin and GeneralizedLangevin qualify; AdaptiveLangevin is
/// nonlinear and RHMC/ZigZag are event-driven, so those are rejected with
/// UnsupportedDynamics.
DriftSystem build_drift_system(const DynamicsKind& kind, const GaussianTarget& target);

/// Stationary covariance of the block, i.e. the solution of
/// A S + S A^T + Sigma Sigma^T = 0. Equals diag(1/m, 1[, 1]) for the catalog.
Matrix stationary_covariance(const DriftSystem& sys);

enum class RateFormula {
    Applicable,   ///< the abstract-rate machinery applies as stated
    Inapplicable, ///< microscopic coercivity fails (or no velocity variable)
};

/// Coercivity constants entering the abstract rate: microscopic coercivity
/// P_v, the H^{-1} bound constant R, macroscopic coercivity P_x. P_v and R
/// are absent when the rate formula does not apply to the dynamics; the
/// macroscopic constant (and hence the lift lower bounds) is always reported.
struct AssumptionConstants {
    std::optional<double> P_v;
    std::optional<double> R;
    double P_x = 0.0;
    RateFormula rate_formula = RateFormula::Applicable;
    std::string note;
};

AssumptionConstants validate_assumptions(const DynamicsKind& kind, const GaussianTarget& target);
AssumptionConstants validate_assumptions(const DynamicsKind& kind, const GeneralPotential& potential, int d);

} // namespace liftkin
