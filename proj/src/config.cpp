#include "spinorq/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <boost/property_tree/ini_parser.hpp>
#include <fmt/format.h>

#include "spinorq/errors.hpp"

namespace spinorq {
namespace {

namespace pt = boost::property_tree;

// Defaults for every configurable value, grouped by section.
const std::vector<std::pair<std::string, std::string>>& defaults() {
  static const std::vector<std::pair<std::string, std::string>> table{
      {"run.out_dir", "out"},
      {"run.threads", "1"},
      {"model.n_atoms", "2000"},
      {"model.c1_sign", "-1"},
      {"quench.q_initial", "-3"},
      {"quench.q_final", "-0.5"},
      {"quench.initial", "ground"},
      {"quench.retention_tolerance", "1e-8"},
      {"quench.band_width", "5"},
      {"quench.band_tolerance", "1e-9"},
      {"window.sensitivity_tol", "1e-3"},
      {"window.steps", "40"},
      {"window.min_fraction", "1e-4"},
      {"window.max_fraction", "0.1"},
      {"kink.margin_fraction", "0.02"},
      {"kink.agreement_fraction", "0.02"},
      {"kink.prominence", "2"},
      {"classify.overlap_half_width_fraction", "0.02"},
      {"classify.overlap_threshold", "1e-2"},
      {"evolve.t_min", "0"},
      {"evolve.t_max", "2000"},
      {"evolve.points", "20001"},
      {"evolve.grid", "linear"},
      {"ground_scan.q_min", "-6"},
      {"ground_scan.q_max", "6"},
      {"ground_scan.q_step", "0.01"},
      {"map.qi_min", "-6"},
      {"map.qi_max", "6"},
      {"map.qf_min", "-6"},
      {"map.qf_max", "6"},
      {"map.step", "0.1"},
      {"eth.q", "3"},
      {"eth.width", "150"},
      {"eth.sizes", "500,1000,2000,4000,8000,16000"},
      {"pr.q", "1"},
      {"pr.sizes", "500,1000,2000,4000,8000,16000"},
      {"pr.mid_width", "60"},
      {"pr.kink_width", "25"},
      {"timescales.sizes", "500,1000,2000,4000,8000,16000"},
      {"timescales.sigma_multiplier", "1"},
      {"timescales.significance", "1e-3"},
      {"timescales.comparable_peak", "0.5"},
      {"timescales.c1_hz", "0"},
      {"fit.input", ""},
      {"fit.x_column", "n_atoms"},
      {"fit.y_column", "value"},
      {"fit.form", "offset"},
      {"fit.gamma_min", "-0.2"},
      {"fit.gamma_max", "2"},
      {"fit.gamma_step", "1e-3"},
  };
  return table;
}

bool known(const std::string& key) {
  for (const auto& [k, v] : defaults()) {
    if (k == key) return true;
  }
  return false;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& [k, v] : defaults()) tree_.put(k, v);
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open config '{}'", path.string()));
  return from_stream(in);
}

RunConfig RunConfig::from_stream(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(fmt::format("config parse error: {}", e.what()));
  }
  RunConfig cfg;
  cfg.merge(tree);
  return cfg;
}

void RunConfig::merge(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw InvalidArgument(fmt::format("config key '{}' is outside any section", section));
    }
    for (const auto& [name, value] : body) {
      set(section + "." + name, value.data());
    }
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (!known(key)) throw InvalidArgument(fmt::format("unknown config key '{}'", key));
  tree_.put(pt::ptree::path_type(key, '.'), trim(value));
}

const std::string& RunConfig::raw(const std::string& key) const {
  if (!known(key)) throw InvalidArgument(fmt::format("unknown config key '{}'", key));
  return tree_.get_child(pt::ptree::path_type(key, '.')).data();
}

std::string RunConfig::get_string(const std::string& key) const { return raw(key); }

double RunConfig::get_double(const std::string& key) const {
  const std::string& s = raw(key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(v)) {
    throw InvalidArgument(fmt::format("config '{}' = '{}' is not a finite number", key, s));
  }
  return v;
}

long RunConfig::get_int(const std::string& key) const {
  const std::string& s = raw(key);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw InvalidArgument(fmt::format("config '{}' = '{}' is not an integer", key, s));
  }
  return v;
}

std::vector<int> RunConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  std::stringstream ss(raw(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw InvalidArgument(fmt::format("config '{}' has a non-integer entry '{}'", key, item));
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument(fmt::format("config '{}' is an empty list", key));
  return out;
}

void RunConfig::write(std::ostream& out) const {
  std::string section;
  for (const auto& [key, unused] : defaults()) {
    const auto dot = key.find('.');
    const std::string s = key.substr(0, dot);
    if (s != section) {
      out << (section.empty() ? "" : "\n") << '[' << s << "]\n";
      section = s;
    }
    out << key.substr(dot + 1) << " = " << raw(key) << '\n';
  }
}

std::string RunConfig::to_string() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

}  // namespace spinorq
