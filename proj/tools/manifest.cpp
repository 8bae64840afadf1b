#include "manifest.hpp"

#include <cstdio>
#include <fstream>

#include "tradenet/domain.hpp"

namespace tradenet::cli {

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

void Manifest::add_input(const std::string& path) { inputs.emplace_back(path, file_hash(path)); }

std::string Manifest::to_json() const {
  nlohmann::json in = nlohmann::json::array();
  for (const auto& [path, hash] : inputs) in.push_back({{"path", path}, {"fnv1a64", hash}});
  nlohmann::json j = {{"schema_version", 1},
                      {"command", command},
                      {"argv", argv},
                      {"config_path", config_path},
                      {"parameters", parameters},
                      {"seeds", seeds},
                      {"inputs", in},
                      {"outputs", outputs},
                      {"wall_seconds", wall_seconds},
                      {"results", results}};
  return j.dump(2) + "\n";
}

}  // namespace tradenet::cli
