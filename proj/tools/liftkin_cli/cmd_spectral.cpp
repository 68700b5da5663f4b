#include "commands.hpp"

#include "liftkin/errors.hpp"

#include "liftkin/io.hpp"
#include "liftkin/spectral.hpp"

#include <cmath>
#include <memory>

namespace liftkin::cli {

namespace {

struct SpectralSettings {
    GlobalOptions g;
    std::string dynamics;
    double m = 1.0;
    double lambda = 0.0;
    double gamma = 0.0;
    bool optimal = false;
    bool optimize_friction = false;
    double curve_tmax = 10.0;
    int curve_points = 200;
};

void run(const SpectralSettings& s) {
    json out;
    out["dynamics"] = s.dynamics;
    out["m"] = s.m;

    DynamicsKind kind;
    if (s.dynamics == "gle") {
        double lambda = s.lambda, gamma = s.gamma;
        if (s.optimal) {
            const auto opt = optimal_gle_params(s.m);
            lambda = opt.lambda_c;
            gamma = opt.gamma;
        }
        if (!(lambda > 0.0) || !(gamma > 0.0))
            throw InvalidParameter("gle requires --lambda and --gamma (or --optimal)");
        kind = GeneralizedLangevin{lambda, gamma};
        out["lambda"] = lambda;
        out["gamma"] = gamma;
    } else if (s.dynamics == "kinetic") {
        double gamma = s.gamma;
        if (s.optimize_friction) {
            const auto choice = optimal_langevin_friction(s.m);
            gamma = choice.gamma;
            out["optimized_friction"] = {{"gamma", choice.gamma}, {"t_rel", choice.t_rel}};
        }
        if (!(gamma > 0.0))
            throw InvalidParameter("kinetic requires --gamma (or --optimize-friction)");
        kind = KineticLangevin{gamma};
        out["gamma"] = gamma;
    } else if (s.dynamics == "overdamped") {
        kind = Overdamped{};
    } else {
        throw InvalidParameter("spectral supports the linear-drift dynamics "
                               "gle/kinetic/overdamped, got: " + s.dynamics);
    }

    std::vector<double> curve_times;
    curve_times.reserve(static_cast<std::size_t>(s.curve_points));
    for (int i = 0; i <= s.curve_points; ++i)
        curve_times.push_back(s.curve_tmax * i / s.curve_points);

    const auto rep = spectral_report(kind, GaussianTarget(s.m, 1), curve_times);

    out["eigenvalues"] = complex_list(rep.eigenvalues);
    out["gap"] = rep.gap;
    out["t_rel"] = rep.t_rel;
    if (rep.t_rel_modal)
        out["t_rel_modal"] = *rep.t_rel_modal;
    out["lower_bound_remark"] = rep.lower_bound_remark;
    out["lower_bound_corollary"] = rep.lower_bound_corollary;

    write_text(out_path(s.g, "spectral.json"), out.dump(2) + "\n");
    write_norm_curve_csv(out_path(s.g, "norm_curve.csv"), rep.norm_times, rep.norm_values);

    json cfg;
    cfg["dynamics"] = s.dynamics;
    cfg["m"] = s.m;
    if (s.lambda > 0.0)
        cfg["lambda"] = s.lambda;
    if (s.gamma > 0.0)
        cfg["gamma"] = s.gamma;
    if (s.optimal)
        cfg["optimal"] = true;
    if (s.optimize_friction)
        cfg["optimize-friction"] = true;
    cfg["curve-tmax"] = s.curve_tmax;
    cfg["curve-points"] = s.curve_points;
    dump_effective_config(s.g, "spectral", cfg);
}

} // namespace

void register_spectral(CLI::App& app) {
    auto s = std::make_shared<SpectralSettings>();
    CLI::App* cmd = app.add_subcommand(
        "spectral", "eigenvalues, spectral gap, relaxation times and lift lower bounds");
    add_global_options(cmd, s->g);
    cmd->add_option("--dynamics", s->dynamics, "gle | kinetic | overdamped")
        ->required()
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--m", s->m, "target precision")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--lambda", s->lambda, "GLE coupling")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--gamma", s->gamma, "friction")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_flag("--optimal", s->optimal, "use the gap-optimal GLE parameters");
    cmd->add_flag("--optimize-friction", s->optimize_friction,
                  "kinetic: pick the gap-optimal friction numerically");
    cmd->add_option("--curve-tmax", s->curve_tmax, "norm curve horizon")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--curve-points", s->curve_points, "norm curve sample count")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->callback([s] { run(*s); });
}

} // namespace liftkin::cli
