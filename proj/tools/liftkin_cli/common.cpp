#include "common.hpp"

#include <filesystem>
#include <fstream>

namespace liftkin::cli {

void add_global_options(CLI::App* cmd, GlobalOptions& g) {
    cmd->add_option("--seed", g.seed, "master seed for all random streams")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--threads", g.threads, "worker threads (output independent of the count)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--out", g.out_dir, "output directory")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

std::string out_path(const GlobalOptions& g, const std::string& name) {
    std::filesystem::create_directories(g.out_dir);
    return g.out_dir + "/" + name;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open for writing: " + path);
    f << text;
}

json complex_list(const std::vector<std::complex<double>>& zs) {
    json arr = json::array();
    for (const auto& z : zs)
        arr.push_back({{"re", z.real()}, {"im", z.imag()}});
    return arr;
}

void dump_effective_config(const GlobalOptions& g, const std::string& command,
                           json settings) {
    settings["command"] = command;
    settings["seed"] = g.seed;
    settings["threads"] = g.threads;
    write_text(out_path(g, "config_used.json"), settings.dump(2) + "\n");
}

} // namespace liftkin::cli
