#include "commands.hpp"

#include "liftkin/errors.hpp"

#include "liftkin/analysis.hpp"
#include "liftkin/io.hpp"
#include "liftkin/spectral.hpp"

#include <cmath>
#include <memory>

namespace liftkin::cli {

namespace {

struct EstimateSettings {
    GlobalOptions g;
    bool exact = false;
    // exact mode
    std::string dynamics = "gle";
    double m = 1.0;
    double lambda = 0.0, gamma = 0.0;
    bool optimal = false;
    double shift = 0.5;
    double t_end = 24.0;
    int points = 480;
    // ensemble mode
    std::string ensemble;
    int coord = 0;
    int max_lag = 30;
    int lag_stride = 1;
};

void run_exact(const EstimateSettings& s) {
    DynamicsKind kind;
    if (s.dynamics == "gle") {
        double lambda = s.lambda, gamma = s.gamma;
        if (s.optimal || !(lambda > 0.0)) {
            const auto opt = optimal_gle_params(s.m);
            lambda = opt.lambda_c;
            gamma = opt.gamma;
        }
        kind = GeneralizedLangevin{lambda, gamma};
    } else if (s.dynamics == "kinetic") {
        kind = KineticLangevin{s.gamma > 0.0 ? s.gamma : 2.0 * std::sqrt(s.m)};
    } else if (s.dynamics == "overdamped") {
        kind = Overdamped{};
    } else {
        throw InvalidParameter("exact estimation needs a linear-drift dynamics");
    }

    const auto sys = build_drift_system(kind, GaussianTarget(s.m, 1));
    const auto target = stationary_law(sys);
    GaussianLaw l0 = target;
    l0.mean(0) += s.shift;

    std::vector<double> times(static_cast<std::size_t>(s.points) + 1);
    for (int i = 0; i <= s.points; ++i)
        times[static_cast<std::size_t>(i)] = s.t_end * i / s.points;
    const auto curve = decay_curve(sys, l0, target, times);

    // relaxation read off the curve: first drop below e^{-1} of the start
    double t_rel_curve = std::numeric_limits<double>::quiet_NaN();
    const double thr = curve.values[0] * std::exp(-1.0);
    for (std::size_t i = 1; i < curve.times.size(); ++i)
        if (curve.values[i] <= thr) {
            t_rel_curve = curve.times[i];
            break;
        }

    write_decay_curve_csv(out_path(s.g, "decay.csv"), curve);
    json fit = json::parse(decay_fit_json(curve));
    fit["t_rel_curve"] = t_rel_curve;
    write_text(out_path(s.g, "decay_fit.json"), fit.dump(2) + "\n");

    json cfg = {{"exact", true},   {"dynamics", s.dynamics}, {"m", s.m},
                {"shift", s.shift}, {"t-end", s.t_end},      {"points", s.points}};
    if (s.lambda > 0.0)
        cfg["lambda"] = s.lambda;
    if (s.gamma > 0.0)
        cfg["gamma"] = s.gamma;
    if (s.optimal)
        cfg["optimal"] = true;
    dump_effective_config(s.g, "estimate", cfg);
}

void run_ensemble_mode(const EstimateSettings& s) {
    if (s.ensemble.empty())
        throw InvalidParameter("estimate needs --exact or --ensemble BASE_PATH");
    const auto ens = read_ensemble(s.ensemble);
    if (s.coord < 0 || s.coord >= ens.n_coords)
        throw InvalidParameter("--coord out of range");
    std::vector<int> lags;
    for (int l = 0; l <= s.max_lag; l += s.lag_stride)
        lags.push_back(l);
    const int coord = s.coord;
    const auto curve = empirical_autocov(
        ens, [coord](std::span<const double> st) { return st[static_cast<std::size_t>(coord)]; },
        lags);
    write_decay_curve_csv(out_path(s.g, "autocov.csv"), curve);
    write_text(out_path(s.g, "autocov_fit.json"), decay_fit_json(curve) + "\n");

    json cfg = {{"ensemble", s.ensemble}, {"coord", s.coord},
                {"max-lag", s.max_lag},   {"lag-stride", s.lag_stride}};
    dump_effective_config(s.g, "estimate", cfg);
}

} // namespace

void register_estimate(CLI::App& app) {
    auto s = std::make_shared<EstimateSettings>();
    CLI::App* cmd = app.add_subcommand(
        "estimate", "decay-rate fits from exact laws or sampled ensembles");
    add_global_options(cmd, s->g);
    auto opt = [&](const char* name, auto& field, const char* help) {
        return cmd->add_option(name, field, help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    cmd->add_flag("--exact", s->exact, "closed-form law propagation instead of an ensemble");
    opt("--dynamics", s->dynamics, "gle | kinetic | overdamped (exact mode)");
    opt("--m", s->m, "target precision");
    opt("--lambda", s->lambda, "GLE coupling");
    opt("--gamma", s->gamma, "friction");
    cmd->add_flag("--optimal", s->optimal, "use the gap-optimal GLE parameters");
    opt("--shift", s->shift, "initial mean shift along x");
    opt("--t-end", s->t_end, "curve horizon");
    opt("--points", s->points, "curve sample count");
    opt("--ensemble", s->ensemble, "base path of a stored ensemble (no extension)");
    opt("--coord", s->coord, "observable coordinate index");
    opt("--max-lag", s->max_lag, "largest autocovariance lag (grid steps)");
    opt("--lag-stride", s->lag_stride, "lag stride");
    cmd->callback([s] {
        if (s->exact)
            run_exact(*s);
        else
            run_ensemble_mode(*s);
    });
}

} // namespace liftkin::cli
