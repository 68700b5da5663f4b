#pragma once

#include "common.hpp"

namespace liftkin::cli {

void register_spectral(CLI::App& app);
void register_rates(CLI::App& app);
void register_simulate(CLI::App& app);
void register_estimate(CLI::App& app);
void register_verify(CLI::App& app);

} // namespace liftkin::cli
