#include "liftkin/rates.hpp"

#include "liftkin/errors.hpp"
#include "liftkin/optimize.hpp"

#include <cmath>
#include <numbers>

namespace liftkin {

namespace {
void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidParameter(std::string(what) + " must be positive");
}

double prefactor(double lambda, double T, PrefactorConvention convention) {
    const double e = (convention == PrefactorConvention::TheoremStatement) ? 1.0 : 0.5;
    return std::exp(e * T * lambda);
}
} // namespace

TheoremRate theorem_rate(const RateInputs& in, PrefactorConvention convention) {
    require_positive(in.P_v, "theorem_rate: P_v");
    require_positive(in.R, "theorem_rate: R");
    require_positive(in.T, "theorem_rate: T");
    if (in.C0T < 0.0 || in.C1T < 0.0)
        throw InvalidParameter("theorem_rate: C0T, C1T must be >= 0");
    const double s = in.C1T + in.C0T * std::sqrt(in.R * in.P_v);
    const double lambda = 2.0 * in.P_v / (1.0 + s * s);
    return {lambda, prefactor(lambda, in.T, convention)};
}

WindowMinimum minimize_over_T(const std::function<double(double)>& C0T_fn,
                              const std::function<double(double)>& C1T_fn,
                              double P_v, double R, std::pair<double, double> T_range,
                              PrefactorConvention convention) {
    require_positive(P_v, "minimize_over_T: P_v");
    require_positive(R, "minimize_over_T: R");
    if (!(T_range.first > 0.0) || !(T_range.second >= T_range.first))
        throw InvalidParameter("minimize_over_T: invalid T range");

    const double root = std::sqrt(R * P_v);
    auto objective = [&](double T) { return C1T_fn(T) + C0T_fn(T) * root; };
    const auto res =
        golden_section_minimize(objective, T_range.first, T_range.second, 1e-8, 129);

    WindowMinimum out;
    out.T_star = res.x;
    out.flat_objective = res.flat;
    out.non_unimodal_warning = res.non_unimodal;
    const auto tr = theorem_rate({P_v, R, C0T_fn(res.x), C1T_fn(res.x), res.x}, convention);
    out.lambda = tr.lambda;
    out.C = tr.C;
    return out;
}

std::function<double(double)> langevin_C0T(double P_x, double C0) {
    require_positive(P_x, "langevin_C0T: P_x");
    return [P_x, C0](double T) { return C0 * (T + 1.0 / std::sqrt(P_x)); };
}

std::function<double(double)> langevin_C1T(double P_x, double C1) {
    require_positive(P_x, "langevin_C1T: P_x");
    return [P_x, C1](double T) { return C1 * (1.0 + 1.0 / (T * std::sqrt(P_x))); };
}

void ALDConfig::validate() const {
    require_positive(P_q, "ALDConfig: P_q");
    require_positive(d, "ALDConfig: d");
    require_positive(epsilon, "ALDConfig: epsilon");
    require_positive(gamma, "ALDConfig: gamma");
    require_positive(L, "ALDConfig: L");
    if (M < 0.0)
        throw InvalidParameter("ALDConfig: M must be >= 0");
    if (T && !(*T > 0.0))
        throw InvalidParameter("ALDConfig: T must be positive when set");
}

ALDConstants ald_constants(const ALDConfig& cfg) {
    cfg.validate();
    if (!cfg.T)
        throw InvalidParameter("ald_constants: averaging window T is required");
    const double T2 = *cfg.T * *cfg.T;
    const double eps2 = cfg.epsilon * cfg.epsilon;
    const double pi2 = std::numbers::pi * std::numbers::pi;

    ALDConstants out;
    out.P_x = std::min(cfg.P_q, 2.0 * cfg.d / eps2);
    const double Pxinv = 1.0 / out.P_x;
    out.c0 = 2.0 * T2 + 43.0 * Pxinv;
    out.c1 = 290.0 + (991.0 / T2) * Pxinv + 43.0 * std::max(Pxinv, T2 / pi2) * cfg.M;
    out.C0T_sq = 2.0 * out.c0;
    out.C1T_sq = 314.0 * (out.c1 + (1.0 / eps2 + cfg.L) * out.c0);
    return out;
}

double ald_rate_bound(const ALDConfig& cfg) {
    cfg.validate();
    const double eps2 = cfg.epsilon * cfg.epsilon;
    const double denom =
        61388.0 + (1.0 / cfg.P_q + eps2 / (2.0 * cfg.d)) *
                      (378.0 * cfg.gamma * cfg.gamma + 6751.0 * cfg.M +
                       9891.0 * (1.0 / eps2 + cfg.L));
    // identical to the abstract rate with C0T = 0, C1T = sqrt(denom - 1)
    return theorem_rate({cfg.gamma, cfg.gamma, 0.0, std::sqrt(denom - 1.0), 1.0}).lambda;
}

ALDOptimalParams ald_optimal_params(double P_q, double d, double M, double L) {
    require_positive(P_q, "ald_optimal_params: P_q");
    require_positive(d, "ald_optimal_params: d");
    require_positive(L, "ald_optimal_params: L");
    if (M < 0.0)
        throw InvalidParameter("ald_optimal_params: M must be >= 0");
    ALDOptimalParams out;
    out.gamma = std::sqrt(P_q + M + L);
    out.eps_sq = std::sqrt(d / (P_q * (M + L + out.gamma * out.gamma)));
    out.lambda = P_q / (66334.0 * std::sqrt(P_q + M + L));
    return out;
}

} // namespace liftkin
