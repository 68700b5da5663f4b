#include "liftkin/io.hpp"

#include "liftkin/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace liftkin {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(path, mode);
    if (!f)
        throw std::runtime_error("cannot open for writing: " + path);
    return f;
}

} // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size())
        throw InvalidParameter("write_csv: header/column count mismatch");
    auto f = open_out(path);
    for (std::size_t c = 0; c < header.size(); ++c)
        f << header[c] << (c + 1 < header.size() ? "," : "\n");
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& col : columns)
        if (col.size() != rows)
            throw InvalidParameter("write_csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            f << fmt(columns[c][r]) << (c + 1 < columns.size() ? "," : "\n");
}

void write_norm_curve_csv(const std::string& path, const std::vector<double>& times,
                          const std::vector<double>& values) {
    write_csv(path, {"t", "norm"}, {times, values});
}

void write_decay_curve_csv(const std::string& path, const DecayCurve& curve) {
    if (curve.std_errors.empty())
        write_csv(path, {"t", "value"}, {curve.times, curve.values});
    else
        write_csv(path, {"t", "value", "stderr"},
                  {curve.times, curve.values, curve.std_errors});
}

std::string decay_fit_json(const DecayCurve& curve) {
    nlohmann::ordered_json j;
    j["fitted_rate"] = curve.fitted_rate;
    j["fitted_prefactor"] = curve.fitted_prefactor;
    j["fit_window"] = {curve.fit_window_lo, curve.fit_window_hi};
    return j.dump(2);
}

void write_ensemble(const std::string& base_path, const Ensemble& ens) {
    {
        auto f = open_out(base_path + ".bin", std::ios::binary);
        f.write(reinterpret_cast<const char*>(ens.states.data()),
                static_cast<std::streamsize>(ens.states.size() * sizeof(double)));
    }
    nlohmann::ordered_json j;
    j["kind"] = ens.kind;
    j["scheme"] = ens.scheme;
    j["h"] = ens.h;
    j["n_traj"] = ens.n_traj;
    j["n_coords"] = ens.n_coords;
    j["times"] = ens.times;
    j["seed"] = ens.master_seed;
    j["layout"] = "little-endian float64 [traj][time][coord]";
    auto f = open_out(base_path + ".json");
    f << j.dump(2) << "\n";
}

Ensemble read_ensemble(const std::string& base_path) {
    std::ifstream jf(base_path + ".json");
    if (!jf)
        throw std::runtime_error("cannot open: " + base_path + ".json");
    nlohmann::json j;
    jf >> j;

    Ensemble ens;
    ens.kind = j.at("kind").get<std::string>();
    ens.scheme = j.at("scheme").get<std::string>();
    ens.h = j.at("h").get<double>();
    ens.n_traj = j.at("n_traj").get<int>();
    ens.n_coords = j.at("n_coords").get<int>();
    ens.times = j.at("times").get<std::vector<double>>();
    ens.master_seed = j.at("seed").get<std::uint64_t>();

    const std::size_t expected = static_cast<std::size_t>(ens.n_traj) * ens.times.size() *
                                 static_cast<std::size_t>(ens.n_coords);
    ens.states.resize(expected);
    std::ifstream bf(base_path + ".bin", std::ios::binary);
    if (!bf)
        throw std::runtime_error("cannot open: " + base_path + ".bin");
    bf.read(reinterpret_cast<char*>(ens.states.data()),
            static_cast<std::streamsize>(expected * sizeof(double)));
    if (static_cast<std::size_t>(bf.gcount()) != expected * sizeof(double))
        throw std::runtime_error("ensemble payload truncated: " + base_path + ".bin");
    return ens;
}

void write_ensemble_csv(const std::string& path, const Ensemble& ens) {
    auto f = open_out(path);
    f << "traj,t";
    for (int c = 0; c < ens.n_coords; ++c)
        f << ",c" << c;
    f << "\n";
    for (int i = 0; i < ens.n_traj; ++i)
        for (std::size_t k = 0; k < ens.times.size(); ++k) {
            f << i << "," << fmt(ens.times[k]);
            const auto s = ens.state(i, static_cast<int>(k));
            for (double v : s)
                f << "," << fmt(v);
            f << "\n";
        }
}

} // namespace liftkin
