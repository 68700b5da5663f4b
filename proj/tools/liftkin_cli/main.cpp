#include "commands.hpp"
#include "common.hpp"

#include "liftkin/errors.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

namespace {

using liftkin::cli::json;

const std::vector<std::string> kCommands = {"spectral", "rates", "simulate", "estimate",
                                            "verify"};

/// Expand `--config file.json` into synthetic flags inserted right after the
/// subcommand token. Real command-line flags come later in argv, and every
/// option uses a take-last policy, so flags override config values. Unknown
/// keys become unknown options and are rejected by the parser.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
    }
    if (config_path.empty())
        return args;

    std::ifstream f(config_path);
    if (!f)
        throw liftkin::InvalidParameter("cannot open config file: " + config_path);
    json cfg = json::parse(f);

    auto cmd_it = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
    });
    if (cmd_it == args.end()) {
        if (!cfg.contains("command"))
            throw liftkin::InvalidParameter("config file lacks \"command\" and none given");
        cmd_it = args.insert(args.begin(), cfg["command"].get<std::string>());
    }

    std::vector<std::string> synthetic;
    for (const auto& [key, value] : cfg.items()) {
        if (key == "command")
            continue;
        synthetic.push_back("--" + key);
        if (value.is_boolean()) {
            if (!value.get<bool>())
                synthetic.pop_back(); // absent flag
        } else if (value.is_string()) {
            synthetic.push_back(value.get<std::string>());
        } else {
            synthetic.push_back(value.dump());
        }
    }
    args.insert(cmd_it + 1, synthetic.begin(), synthetic.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    using namespace liftkin::cli;

    CLI::App app{"explicit convergence rates, spectral analysis and simulation "
                 "of kinetic Langevin-type samplers"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");
    app.footer("exit codes: 0 ok, 1 failed verification checks, 2 invalid input, "
               "3 numeric failure.\n--config FILE supplies defaults as JSON; "
               "explicit flags take precedence.");
    // --config is consumed before parsing; declared here for --help
    std::string config_dummy;
    app.add_option("--config", config_dummy, "JSON file with option defaults")
        ->expected(1)
        ->group("Global");

    register_spectral(app);
    register_rates(app);
    register_simulate(app);
    register_estimate(app);
    register_verify(app);

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end()); // CLI11 parses reversed vectors
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const ChecksFailed& e) {
        std::cerr << e.what() << "\n";
        return kExitFailedChecks;
    } catch (const liftkin::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const liftkin::UnsupportedDynamics& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const liftkin::InsufficientData& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const liftkin::WindowOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
