#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tradenet::cli {

/// FNV-1a 64 of a file's bytes, as 16 hex digits.
std::string file_hash(const std::string& path);

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  std::string config_path;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, hash
  std::vector<std::string> outputs;
  double wall_seconds{0.0};
  nlohmann::json results = nlohmann::json::object();

  void add_input(const std::string& path);
  std::string to_json() const;
};

}  // namespace tradenet::cli
