#include "commands.hpp"

#include "liftkin/errors.hpp"

#include "liftkin/io.hpp"
#include "liftkin/spectral.hpp"

#include <cmath>
#include <memory>

namespace liftkin::cli {

namespace {

struct SimulateSettings {
    GlobalOptions g;
    std::string dynamics;
    std::string scheme = "default";
    std::string potential = "quadratic";
    double m = 1.0;
    int d = 1;
    double lambda = 0.0, gamma = 1.0, eps = 1.0;
    int n_traj = 100;
    double t_end = 10.0;
    double dt = 0.1;
    double h = 0.01;
    std::string init = "stationary";
    bool csv = false;
};

DynamicsKind make_kind(const SimulateSettings& s) {
    if (s.dynamics == "overdamped")
        return Overdamped{};
    if (s.dynamics == "kinetic")
        return KineticLangevin{s.gamma};
    if (s.dynamics == "rhmc")
        return RandomizedHMC{s.gamma};
    if (s.dynamics == "zigzag")
        return ZigZag{s.gamma};
    if (s.dynamics == "ald")
        return AdaptiveLangevin{s.eps, s.gamma};
    if (s.dynamics == "gle") {
        if (s.lambda > 0.0)
            return GeneralizedLangevin{s.lambda, s.gamma};
        const auto opt = optimal_gle_params(s.m);
        return GeneralizedLangevin{opt.lambda_c, opt.gamma};
    }
    throw InvalidParameter("unknown dynamics: " + s.dynamics);
}

void run(const SimulateSettings& s) {
    if (s.potential != "quadratic")
        throw InvalidParameter("the CLI simulates the quadratic target; "
                               "non-quadratic potentials go through the library API");
    const DynamicsKind kind = make_kind(s);
    SchemeSpec spec;
    spec.scheme = (s.scheme == "default") ? default_scheme(kind) : scheme_from_name(s.scheme);
    spec.h = s.h;

    const auto n_steps = static_cast<int>(std::lround(s.t_end / s.dt));
    if (n_steps < 1 || std::abs(n_steps * s.dt - s.t_end) > 1e-9 * s.t_end)
        throw InvalidParameter("t_end must be an integer multiple of dt");
    std::vector<double> times(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i)
        times[static_cast<std::size_t>(i)] = s.dt * i;

    const InitialCondition init = [&] {
        if (s.init == "stationary")
            return InitialCondition::Stationary;
        if (s.init == "zero")
            return InitialCondition::Zero;
        throw InvalidParameter("--init must be stationary or zero");
    }();

    const auto ens = run_ensemble(kind, spec, Potential{QuadraticPotential{s.m}}, s.d,
                                  s.n_traj, times, s.g.seed, init, s.g.threads);
    write_ensemble(out_path(s.g, "ensemble"), ens);
    if (s.csv)
        write_ensemble_csv(out_path(s.g, "ensemble.csv"), ens);

    json cfg = {{"dynamics", s.dynamics}, {"scheme", scheme_name(spec.scheme)},
                {"potential", s.potential}, {"m", s.m},       {"d", s.d},
                {"gamma", s.gamma},         {"eps", s.eps},   {"n-traj", s.n_traj},
                {"t-end", s.t_end},         {"dt", s.dt},     {"substep", s.h},
                {"init", s.init}};
    if (s.lambda > 0.0)
        cfg["lambda"] = s.lambda;
    if (s.csv)
        cfg["csv"] = true;
    dump_effective_config(s.g, "simulate", cfg);
}

} // namespace

void register_simulate(CLI::App& app) {
    auto s = std::make_shared<SimulateSettings>();
    CLI::App* cmd = app.add_subcommand("simulate", "sample trajectory ensembles");
    add_global_options(cmd, s->g);
    auto opt = [&](const char* name, auto& field, const char* help) {
        return cmd->add_option(name, field, help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    opt("--dynamics", s->dynamics,
        "overdamped | kinetic | rhmc | zigzag | ald | gle")->required();
    opt("--scheme", s->scheme,
        "default | exact-ou | euler-maruyama | baoab | splitting-ald | splitting-gle | "
        "event-rhmc | event-zigzag");
    opt("--potential", s->potential, "quadratic");
    opt("--m", s->m, "target precision");
    opt("--d", s->d, "spatial dimension");
    opt("--lambda", s->lambda, "GLE coupling (0 = gap-optimal)");
    opt("--gamma", s->gamma, "friction / refresh rate");
    opt("--eps", s->eps, "adaptive-Langevin feedback scale");
    opt("--n-traj", s->n_traj, "number of trajectories");
    opt("--t-end", s->t_end, "final time");
    opt("--dt", s->dt, "output grid spacing");
    opt("--substep", s->h, "integrator substep");
    opt("--init", s->init, "stationary | zero");
    cmd->add_flag("--csv", s->csv, "also write a flat CSV");
    cmd->callback([s] { run(*s); });
}

} // namespace liftkin::cli
