#pragma once

#include "liftkin/dynamics.hpp"

#include <string>
#include <vector>

namespace liftkin {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string label;
    std::vector<CheckResult> checks;
    bool pass = true;
};

/// Splitting schemes carry an O(h^2) invariant-measure bias; this constant
/// times h^2 widens the Monte Carlo tolerance for them.
inline constexpr double kSplittingBiasPerH2 = 5.0;

/// Initialize one dynamics from its invariant measure on the quadratic
/// target, run the horizon, and compare terminal first/second moments
/// against the target within 4 standard errors (plus the bias allowance for
/// discretized schemes).
SuiteResult stationarity_case(const DynamicsKind& kind, const SchemeSpec& scheme,
                              double m, int d, int n_traj, double horizon,
                              std::uint64_t seed);

/// The full six-dynamics battery with the default scheme of each kind
/// (exact transitions where available, splitting for ALD).
std::vector<SuiteResult> stationarity_suite(double m, int d, int n_traj, double horizon,
                                            std::uint64_t seed);

/// The seven Gaussian moment identities, Monte Carlo vs analytic, within
/// 5 standard errors.
SuiteResult moment_suite(int d, long n_samples, std::uint64_t seed);

} // namespace liftkin
