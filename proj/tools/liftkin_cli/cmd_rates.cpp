#include "commands.hpp"

#include "liftkin/errors.hpp"

#include "liftkin/io.hpp"
#include "liftkin/rates.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace liftkin::cli {

namespace {

struct RatesSettings {
    GlobalOptions g;
    std::string mode;
    // theorem inputs
    double pv = 1.0, r = 1.0, c0t = 0.0, c1t = 0.0, T = 1.0;
    // adaptive Langevin inputs
    double pq = 1.0, d = 1.0, eps = 1.0, gamma = 1.0, M = 0.0, L = 1.0;
    // sweep over one adaptive-Langevin parameter (log grid)
    std::string sweep;
    double sweep_from = 0.1, sweep_to = 10.0;
    int sweep_points = 25;
};

struct Row {
    double value, lambda, T_star, C;
};

Row bound_row(const RatesSettings& s, double eps, double gamma) {
    ALDConfig cfg{s.pq, s.d, eps, gamma, s.M, s.L, {}};
    const double lambda = ald_rate_bound(cfg);
    const double P_x = std::min(s.pq, 2.0 * s.d / (eps * eps));
    const double T_star = std::numbers::pi / std::sqrt(P_x);
    return {0.0, lambda, T_star, std::exp(T_star * lambda)};
}

void run(const RatesSettings& s) {
    std::vector<std::string> header = {"param", "value", "lambda_lower", "T_star", "C"};
    std::vector<std::string> param_names;
    std::vector<Row> rows;
    json extra;

    if (s.mode == "theorem") {
        const auto tr = theorem_rate({s.pv, s.r, s.c0t, s.c1t, s.T});
        rows.push_back({s.T, tr.lambda, s.T, tr.C});
        param_names.emplace_back("T");
        extra["lambda"] = tr.lambda;
        extra["C"] = tr.C;
    } else if (s.mode == "ald-constants") {
        ALDConfig cfg{s.pq, s.d, s.eps, s.gamma, s.M, s.L, s.T};
        const auto c = ald_constants(cfg);
        const auto tr = theorem_rate(
            {s.gamma, s.gamma, std::sqrt(c.C0T_sq), std::sqrt(c.C1T_sq), s.T});
        rows.push_back({s.T, tr.lambda, s.T, tr.C});
        param_names.emplace_back("T");
        extra = {{"P_x", c.P_x},         {"c0", c.c0},
                 {"c1", c.c1},           {"C0T_sq", c.C0T_sq},
                 {"C1T_sq", c.C1T_sq},   {"lambda", tr.lambda}};
    } else if (s.mode == "ald-bound") {
        if (s.sweep.empty()) {
            Row row = bound_row(s, s.eps, s.gamma);
            row.value = s.gamma;
            rows.push_back(row);
            param_names.emplace_back("gamma");
            extra["lambda_lower"] = row.lambda;
        } else {
            if (s.sweep != "eps" && s.sweep != "gamma")
                throw InvalidParameter("--sweep must be eps or gamma");
            if (!(s.sweep_from > 0.0) || !(s.sweep_to > s.sweep_from) || s.sweep_points < 2)
                throw InvalidParameter("invalid sweep grid");
            const double lf = std::log(s.sweep_from), lt = std::log(s.sweep_to);
            for (int i = 0; i < s.sweep_points; ++i) {
                const double v = std::exp(lf + (lt - lf) * i / (s.sweep_points - 1));
                Row row = (s.sweep == "eps") ? bound_row(s, v, s.gamma)
                                             : bound_row(s, s.eps, v);
                row.value = v;
                rows.push_back(row);
                param_names.push_back(s.sweep);
            }
        }
    } else if (s.mode == "ald-optimal") {
        const auto p = ald_optimal_params(s.pq, s.d, s.M, s.L);
        const double P_x = std::min(s.pq, 2.0 * s.d / p.eps_sq);
        const double T_star = std::numbers::pi / std::sqrt(P_x);
        rows.push_back({s.pq, p.lambda, T_star, std::exp(T_star * p.lambda)});
        param_names.emplace_back("P_q");
        extra = {{"eps_sq", p.eps_sq}, {"gamma", p.gamma}, {"lambda", p.lambda}};
    } else {
        throw InvalidParameter(
            "--mode must be one of theorem, ald-constants, ald-bound, ald-optimal");
    }

    // param column is textual; write the csv by hand through the column writer
    std::vector<double> vv, vl, vt, vc;
    for (const auto& r : rows) {
        vv.push_back(r.value);
        vl.push_back(r.lambda);
        vt.push_back(r.T_star);
        vc.push_back(r.C);
    }
    // write with the param name prepended per row
    std::string csv = "param,value,lambda_lower,T_star,C\n";
    char buf[256];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.12e,%.12e,%.12e,%.12e\n",
                      param_names[i].c_str(), vv[i], vl[i], vt[i], vc[i]);
        csv += buf;
    }
    write_text(out_path(s.g, "rates.csv"), csv);
    if (!extra.empty())
        write_text(out_path(s.g, "rates.json"), extra.dump(2) + "\n");

    json cfg = {{"mode", s.mode}, {"pv", s.pv},       {"r", s.r},     {"c0t", s.c0t},
                {"c1t", s.c1t},   {"T", s.T},         {"pq", s.pq},   {"d", s.d},
                {"eps", s.eps},   {"gamma", s.gamma}, {"M", s.M},     {"L", s.L}};
    if (!s.sweep.empty()) {
        cfg["sweep"] = s.sweep;
        cfg["sweep-from"] = s.sweep_from;
        cfg["sweep-to"] = s.sweep_to;
        cfg["sweep-points"] = s.sweep_points;
    }
    dump_effective_config(s.g, "rates", cfg);
}

} // namespace

void register_rates(CLI::App& app) {
    auto s = std::make_shared<RatesSettings>();
    CLI::App* cmd = app.add_subcommand(
        "rates", "abstract convergence rate and the adaptive-Langevin bounds");
    add_global_options(cmd, s->g);
    auto opt = [&](const char* name, auto& field, const char* help) {
        return cmd->add_option(name, field, help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    opt("--mode", s->mode, "theorem | ald-constants | ald-bound | ald-optimal")->required();
    opt("--pv", s->pv, "microscopic coercivity P_v");
    opt("--r", s->r, "H^{-1} bound constant R");
    opt("--c0t", s->c0t, "window constant C_{0,T}");
    opt("--c1t", s->c1t, "window constant C_{1,T}");
    opt("--T", s->T, "averaging window");
    opt("--pq", s->pq, "spatial spectral gap P_q");
    opt("--d", s->d, "dimension");
    opt("--eps", s->eps, "feedback scale epsilon");
    opt("--gamma", s->gamma, "friction");
    opt("--M", s->M, "Hessian lower bound");
    opt("--L", s->L, "Laplacian growth constant");
    opt("--sweep", s->sweep, "ald-bound sweep parameter: eps | gamma");
    opt("--sweep-from", s->sweep_from, "sweep start (log grid)");
    opt("--sweep-to", s->sweep_to, "sweep end");
    opt("--sweep-points", s->sweep_points, "sweep sample count");
    cmd->callback([s] { run(*s); });
}

} // namespace liftkin::cli
