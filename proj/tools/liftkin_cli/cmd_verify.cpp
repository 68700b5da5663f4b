#include "commands.hpp"

#include "liftkin/errors.hpp"

#include "liftkin/verify.hpp"

#include <iostream>
#include <memory>

namespace liftkin::cli {

namespace {

struct VerifySettings {
    GlobalOptions g;
    std::string suite;
    int d = 1;
    long n_samples = 1000000;
    int n_traj = 20000;
    double horizon = 10.0;
};

json suite_json(const SuiteResult& res) {
    json cases = json::array();
    for (const auto& c : res.checks)
        cases.push_back({{"name", c.name},
                         {"value", c.value},
                         {"expected", c.expected},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
    return {{"label", res.label}, {"pass", res.pass}, {"cases", cases}};
}

void run(const VerifySettings& s) {
    std::vector<SuiteResult> results;
    if (s.suite == "moments") {
        results.push_back(moment_suite(s.d, s.n_samples, s.g.seed));
    } else if (s.suite == "stationarity") {
        results = stationarity_suite(1.0, s.d, s.n_traj, s.horizon, s.g.seed);
    } else if (s.suite == "all") {
        results.push_back(moment_suite(s.d, s.n_samples, s.g.seed));
        auto st = stationarity_suite(1.0, s.d, s.n_traj, s.horizon, s.g.seed);
        results.insert(results.end(), st.begin(), st.end());
    } else {
        throw InvalidParameter("--suite must be moments, stationarity or all");
    }

    bool pass = true;
    json suites = json::array();
    for (const auto& r : results) {
        suites.push_back(suite_json(r));
        pass = pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.label << "\n";
    }
    json out = {{"suite", s.suite}, {"pass", pass}, {"suites", suites}};
    write_text(out_path(s.g, "verify.json"), out.dump(2) + "\n");

    json cfg = {{"suite", s.suite},     {"d", s.d},
                {"n-samples", s.n_samples}, {"n-traj", s.n_traj},
                {"horizon", s.horizon}};
    dump_effective_config(s.g, "verify", cfg);

    if (!pass)
        throw ChecksFailed("verification suite failed; see verify.json");
}

} // namespace

void register_verify(CLI::App& app) {
    auto s = std::make_shared<VerifySettings>();
    CLI::App* cmd = app.add_subcommand(
        "verify", "moment-identity and stationarity batteries with pass/fail output");
    add_global_options(cmd, s->g);
    auto opt = [&](const char* name, auto& field, const char* help) {
        return cmd->add_option(name, field, help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    opt("--suite", s->suite, "moments | stationarity | all")->required();
    opt("--d", s->d, "dimension");
    opt("--n-samples", s->n_samples, "Monte Carlo samples for the moment suite");
    opt("--n-traj", s->n_traj, "trajectories per stationarity case");
    opt("--horizon", s->horizon, "stationarity run length");
    cmd->callback([s] { run(*s); });
}

} // namespace liftkin::cli
