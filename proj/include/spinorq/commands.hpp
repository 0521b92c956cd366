#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spinorq/config.hpp"

namespace spinorq::cli {

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  unsigned threads = 1;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand, writing its CSV/JSON/plot files and the effective
/// configuration into ctx.out_dir. Throws on failure.
void run_command(const std::string& name, const Context& ctx);

/// Name of the error class for machine-readable error reports.
std::string error_kind(const std::exception& e);

}  // namespace spinorq::cli
