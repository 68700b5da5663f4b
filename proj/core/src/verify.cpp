#include "liftkin/verify.hpp"

#include <array>
#include <cmath>

namespace liftkin {

SuiteResult stationarity_case(const DynamicsKind& kind, const SchemeSpec& scheme,
                              double m, int d, int n_traj, double horizon,
                              std::uint64_t seed) {
    SuiteResult res;
    res.label = kind_name(kind) + "/" + scheme_name(scheme.scheme);

    const Potential U = QuadraticPotential{m};
    const auto ens = run_ensemble(kind, scheme, U, d, n_traj, {0.0, horizon}, seed,
                                  InitialCondition::Stationary, 4);

    const bool discretized = scheme.scheme == Scheme::SplittingBAOAB ||
                             scheme.scheme == Scheme::SplittingALD ||
                             scheme.scheme == Scheme::SplittingGLE ||
                             scheme.scheme == Scheme::EulerMaruyama;
    const double bias = discretized ? kSplittingBiasPerH2 * scheme.h * scheme.h : 0.0;
    const int last = static_cast<int>(ens.times.size()) - 1;
    const double n = static_cast<double>(n_traj);

    auto add = [&](const std::string& name, double value, double expected, double se) {
        CheckResult c{name, value, expected, 4.0 * se + bias, false};
        c.pass = std::abs(value - expected) <= c.tolerance;
        res.checks.push_back(c);
        res.pass = res.pass && c.pass;
    };

    const bool zigzag = std::holds_alternative<ZigZag>(kind);
    for (int coord = 0; coord < ens.n_coords; ++coord) {
        double s1 = 0, s2 = 0, s4 = 0;
        for (int i = 0; i < n_traj; ++i) {
            const double v = ens.state(i, last)[static_cast<std::size_t>(coord)];
            s1 += v;
            s2 += v * v;
            s4 += v * v * v * v;
        }
        const double m1 = s1 / n, m2 = s2 / n, m4 = s4 / n;
        const bool is_x = coord < d;
        const bool is_v = coord >= d && coord < 2 * d;
        const std::string base = is_x ? "x" : (is_v ? "v" : "z");
        add("E[" + base + "]", m1, 0.0, std::sqrt(std::max(m2 - m1 * m1, 0.0) / n));
        if (zigzag && is_v)
            continue; // velocities are exactly +-1
        add("E[" + base + "^2]", m2, is_x ? 1.0 / m : 1.0,
            std::sqrt(std::max(m4 - m2 * m2, 0.0) / n));
    }
    return res;
}

std::vector<SuiteResult> stationarity_suite(double m, int d, int n_traj, double horizon,
                                            std::uint64_t seed) {
    const double sqm = std::sqrt(m);
    const std::vector<std::pair<DynamicsKind, SchemeSpec>> cases = {
        {Overdamped{}, {Scheme::ExactOU, 0.0}},
        {KineticLangevin{2.0 * sqm}, {Scheme::ExactOU, 0.0}},
        {RandomizedHMC{1.0}, {Scheme::EventRHMC, 1e-3}},
        {ZigZag{0.5}, {Scheme::EventZigZag, 0.0}},
        {AdaptiveLangevin{1.0, 1.0}, {Scheme::SplittingALD, 0.005}},
        {GeneralizedLangevin{2.0 * std::sqrt(2.0 * m), 3.0 * std::sqrt(3.0 * m)},
         {Scheme::ExactOU, 0.0}},
    };
    std::vector<SuiteResult> out;
    out.reserve(cases.size());
    for (const auto& [kind, scheme] : cases)
        out.push_back(stationarity_case(kind, scheme, m, d, n_traj, horizon, seed));
    return out;
}

SuiteResult moment_suite(int d, long n_samples, std::uint64_t seed) {
    SuiteResult res;
    res.label = "kappa-moments/d=" + std::to_string(d);
    const auto exact = kappa_moment_exact(d);
    const auto mc = kappa_moment_mc(d, n_samples, seed);
    for (std::size_t j = 0; j < exact.size(); ++j) {
        CheckResult c{kappa_moment_names[j], mc[j].value, exact[j],
                      5.0 * mc[j].std_error, false};
        c.pass = std::abs(c.value - c.expected) <= c.tolerance;
        res.checks.push_back(c);
        res.pass = res.pass && c.pass;
    }
    return res;
}

} // namespace liftkin
