#include "varibase/io/run_metadata.hpp"

#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "varibase/core/errors.hpp"
#include "varibase/kernels/kernels.hpp"

namespace varibase::io {

std::string run_id_from(const std::string& canonical_config) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_run_metadata(const std::string& out_dir, const std::string& command,
                        const std::string& run_id,
                        const std::map<std::string, std::string>& config) {
  nlohmann::json j;
  j["run_id"] = run_id;
  j["command"] = command;
  j["version"] = kVersion;
  j["kernel_backend"] = kernels::active_backend_name();
  j["decisions"] = {
      {"blend_weight", "remapped (w' = 2w - 1)"},
      {"speed_law", "v_max * (1 - w') * depth-confidence"},
      {"median_operator", "coordinate-wise"},
      {"quantization", "nearest integer, ties to even"},
  };
  j["config"] = config;
  const std::string path = out_dir + "/run_metadata.json";
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace varibase::io
