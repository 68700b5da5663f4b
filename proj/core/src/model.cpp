#include "liftkin/model.hpp"

#include "liftkin/errors.hpp"

#include <cmath>

namespace liftkin {

GaussianTarget::GaussianTarget(double m_, int d_) : m(m_), d(d_) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw InvalidParameter("GaussianTarget: precision m must be positive");
    if (d < 1)
        throw InvalidParameter("GaussianTarget: dimension d must be >= 1");
}

void GeneralPotential::validate() const {
    if (hessian_lower_bound < 0.0)
        throw InvalidParameter("GeneralPotential: M must be >= 0");
    if (!(laplacian_growth > 0.0))
        throw InvalidParameter("GeneralPotential: L must be > 0");
    if (!(laplacian_growth_a > 0.0 && laplacian_growth_a < 0.5))
        throw InvalidParameter("GeneralPotential: a must lie in (0, 1/2)");
    if (!(poincare_gap > 0.0))
        throw InvalidParameter("GeneralPotential: P_q must be > 0");
}

std::string kind_name(const DynamicsKind& kind) {
    return std::visit(
        [](const auto& k) -> std::string {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Overdamped>) return "overdamped";
            else if constexpr (std::is_same_v<T, KineticLangevin>) return "kinetic";
            else if constexpr (std::is_same_v<T, RandomizedHMC>) return "rhmc";
            else if constexpr (std::is_same_v<T, ZigZag>) return "zigzag";
            else if constexpr (std::is_same_v<T, AdaptiveLangevin>) return "ald";
            else return "gle";
        },
        kind);
}

namespace {
void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw InvalidParameter(std::string(what) + " must be positive");
}
} // namespace

void validate_kind(const DynamicsKind& kind) {
    std::visit(
        [](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, KineticLangevin>) {
                require_positive(k.gamma, "KineticLangevin: gamma");
            } else if constexpr (std::is_same_v<T, RandomizedHMC>) {
                require_positive(k.gamma, "RandomizedHMC: gamma");
            } else if constexpr (std::is_same_v<T, ZigZag>) {
                require_positive(k.gamma, "ZigZag: gamma");
            } else if constexpr (std::is_same_v<T, AdaptiveLangevin>) {
                require_positive(k.epsilon, "AdaptiveLangevin: epsilon");
                require_positive(k.gamma, "AdaptiveLangevin: gamma");
            } else if constexpr (std::is_same_v<T, GeneralizedLangevin>) {
                require_positive(k.lambda_c, "GeneralizedLangevin: lambda_c");
                require_positive(k.gamma, "GeneralizedLangevin: gamma");
            }
        },
        kind);
}

int state_dimension(const DynamicsKind& kind, int d) {
    return std::visit(
        [d](const auto& k) -> int {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Overdamped>) return d;
            else if constexpr (std::is_same_v<T, AdaptiveLangevin>) return 2 * d + 1;
            else if constexpr (std::is_same_v<T, GeneralizedLangevin>) return 3 * d;
            else return 2 * d;
        },
        kind);
}

DriftSystem build_drift_system(const DynamicsKind& kind, const GaussianTarget& target) {
    validate_kind(kind);
    const double m = target.m;
    DriftSystem sys;
    sys.m = m;

    if (std::holds_alternative<Overdamped>(kind)) {
        sys.A = Matrix::Constant(1, 1, -m);
        sys.Sigma = Matrix::Constant(1, 1, std::sqrt(2.0));
        sys.blocks = {'x'};
        return sys;
    }
    if (const auto* kl = std::get_if<KineticLangevin>(&kind)) {
        sys.A = Matrix{{0.0, 1.0}, {-m, -kl->gamma}};
        sys.Sigma = Matrix::Zero(2, 1);
        sys.Sigma(1, 0) = std::sqrt(2.0 * kl->gamma);
        sys.blocks = {'x', 'v'};
        return sys;
    }
    if (const auto* gle = std::get_if<GeneralizedLangevin>(&kind)) {
        sys.A = Matrix{{0.0, 1.0, 0.0},
                       {-m, 0.0, gle->lambda_c},
                       {0.0, -gle->lambda_c, -gle->gamma}};
        sys.Sigma = Matrix::Zero(3, 1);
        sys.Sigma(2, 0) = std::sqrt(2.0 * gle->gamma);
        sys.blocks = {'x', 'v', 'z'};
        return sys;
    }
    throw UnsupportedDynamics("linear drift block undefined for " + kind_name(kind) +
                              " (nonlinear or event-driven dynamics)");
}

Matrix stationary_covariance(const DriftSystem& sys) {
    return lyapunov_solve(sys.A, sys.Sigma * sys.Sigma.transpose());
}

namespace {
AssumptionConstants assumptions_impl(const DynamicsKind& kind, double P_q, int d) {
    validate_kind(kind);
    AssumptionConstants out;
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, KineticLangevin> ||
                          std::is_same_v<T, RandomizedHMC> || std::is_same_v<T, ZigZag>) {
                out.P_v = k.gamma;
                out.R = k.gamma;
                out.P_x = P_q;
            } else if constexpr (std::is_same_v<T, AdaptiveLangevin>) {
                out.P_v = k.gamma;
                out.R = k.gamma;
                // the spatial variable is (q, z); the emergent diffusion has
                // gap min(P_q, 2d/eps^2)
                out.P_x = std::min(P_q, 2.0 * d / (k.epsilon * k.epsilon));
            } else if constexpr (std::is_same_v<T, GeneralizedLangevin>) {
                out.P_x = P_q;
                out.rate_formula = RateFormula::Inapplicable;
                out.note = "dissipation acts on z only: microscopic coercivity fails "
                           "(ker L_v != Im Pi); lower bounds still apply";
            } else { // Overdamped
                out.P_x = P_q;
                out.rate_formula = RateFormula::Inapplicable;
                out.note = "reversible base dynamics, not a lift; rate formula not applicable";
            }
        },
        kind);
    return out;
}
} // namespace

AssumptionConstants validate_assumptions(const DynamicsKind& kind, const GaussianTarget& target) {
    // grad*grad on L^2(N(0, m^{-1})) has spectral gap m per coordinate
    return assumptions_impl(kind, target.m, target.d);
}

AssumptionConstants validate_assumptions(const DynamicsKind& kind,
                                         const GeneralPotential& potential, int d) {
    potential.validate();
    if (d < 1)
        throw InvalidParameter("validate_assumptions: dimension d must be >= 1");
    return assumptions_impl(kind, potential.poincare_gap, d);
}

} // namespace liftkin
