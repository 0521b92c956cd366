#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace spinorq {

/// INI-style run configuration ("[section]" headers, "key = value" lines).
/// Every key has a default; unknown keys are rejected so typos surface early.
class RunConfig {
 public:
  RunConfig();

  static RunConfig from_file(const std::filesystem::path& path);
  static RunConfig from_stream(std::istream& in);

  /// key is "section.name".
  void set(const std::string& key, const std::string& value);

  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  long get_int(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  /// All keys with their effective values, in a fixed order.
  void write(std::ostream& out) const;
  std::string to_string() const;

 private:
  void merge(const boost::property_tree::ptree& tree);
  const std::string& raw(const std::string& key) const;

  boost::property_tree::ptree tree_;
};

}  // namespace spinorq
