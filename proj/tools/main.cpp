#include <algorithm>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <boost/program_options.hpp>
#include <fmt/format.h>

#include "spinorq/commands.hpp"
#include "spinorq/errors.hpp"
#include "spinorq/io.hpp"

namespace po = boost::program_options;

namespace {

void usage(std::ostream& out, const po::options_description& opts) {
  out << "usage: spinorq <command> [options]\n\ncommands:\n";
  for (const auto& name : spinorq::cli::command_names()) out << "  " << name << '\n';
  out << '\n' << opts;
}

int fail(const std::string& kind, const std::string& message,
         const std::filesystem::path& out_dir, int code) {
  spinorq::Json doc = spinorq::json_document();
  doc["error"] = {{"type", kind}, {"message", message}};
  std::cerr << doc.dump() << '\n';
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!ec) {
      try {
        spinorq::write_json(out_dir / "error.json", doc);
      } catch (const std::exception&) {
      }
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  po::options_description opts("options");
  // clang-format off
  opts.add_options()
      ("help", "show this help")
      ("config", po::value<std::string>(), "INI configuration file")
      ("out-dir", po::value<std::string>(), "output directory (run.out_dir)")
      ("threads", po::value<std::string>(), "worker threads, 0 = all cores (run.threads)")
      ("n-atoms", po::value<std::string>(), "atom number N (model.n_atoms)")
      ("c1-sign", po::value<std::string>(), "-1 ferromagnetic, +1 antiferromagnetic (model.c1_sign)")
      ("qi", po::value<std::string>(), "initial Zeeman strength (quench.q_initial)")
      ("qf", po::value<std::string>(), "final Zeeman strength (quench.q_final)")
      ("set", po::value<std::vector<std::string>>()->composing(),
       "override any key: --set section.key=value");
  // clang-format on
  po::options_description hidden;
  hidden.add_options()("command", po::value<std::string>());
  po::options_description all;
  all.add(opts).add(hidden);
  po::positional_options_description pos;
  pos.add("command", 1);

  po::variables_map vm;
  try {
    // Negative numbers such as "--qi -3" must not be read as options.
    po::store(po::command_line_parser(argc, argv)
                  .options(all)
                  .positional(pos)
                  .style(po::command_line_style::unix_style ^
                         po::command_line_style::allow_short)
                  .run(),
              vm);
    po::notify(vm);
  } catch (const po::error& e) {
    usage(std::cerr, opts);
    return fail("UsageError", e.what(), {}, 2);
  }
  if (vm.count("help") || !vm.count("command")) {
    usage(vm.count("help") ? std::cout : std::cerr, opts);
    return vm.count("help") ? 0 : 2;
  }

  const std::string command = vm["command"].as<std::string>();
  const auto& names = spinorq::cli::command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    usage(std::cerr, opts);
    return fail("UsageError", fmt::format("unknown command '{}'", command), {}, 2);
  }

  spinorq::cli::Context ctx;
  try {
    if (vm.count("config")) {
      ctx.config = spinorq::RunConfig::from_file(vm["config"].as<std::string>());
    }
    if (vm.count("set")) {
      for (const auto& kv : vm["set"].as<std::vector<std::string>>()) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          throw spinorq::InvalidArgument(fmt::format("--set expects key=value, got '{}'", kv));
        }
        ctx.config.set(kv.substr(0, eq), kv.substr(eq + 1));
      }
    }
    const std::pair<const char*, const char*> flags[] = {
        {"out-dir", "run.out_dir"}, {"threads", "run.threads"}, {"n-atoms", "model.n_atoms"},
        {"c1-sign", "model.c1_sign"}, {"qi", "quench.q_initial"}, {"qf", "quench.q_final"}};
    for (const auto& [flag, key] : flags) {
      if (vm.count(flag)) ctx.config.set(key, vm[flag].as<std::string>());
    }
    ctx.out_dir = ctx.config.get_string("run.out_dir");
    const long threads = ctx.config.get_int("run.threads");
    if (threads < 0) throw spinorq::InvalidArgument("run.threads must be >= 0");
    ctx.threads = static_cast<unsigned>(threads);
  } catch (const std::exception& e) {
    return fail(spinorq::cli::error_kind(e), e.what(), {}, 2);
  }

  try {
    spinorq::cli::run_command(command, ctx);
  } catch (const std::exception& e) {
    return fail(spinorq::cli::error_kind(e), e.what(), ctx.out_dir, 1);
  }
  return 0;
}
