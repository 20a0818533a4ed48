#pragma once

#include "CLI11.hpp"

namespace permgeo::cli {

void register_simulate(CLI::App& app);
void register_estimate(CLI::App& app);
void register_permute(CLI::App& app);
void register_compare(CLI::App& app);
void register_efftests(CLI::App& app);

} // namespace permgeo::cli
