#pragma once

#include <map>
#include <string>

namespace varibase::io {

inline constexpr const char* kVersion = "varibase 0.1.0";

/// FNV-1a of the canonical config string; stable across runs so identical
/// configs produce identical run ids (and byte-identical outputs).
std::string run_id_from(const std::string& canonical_config);

/// Writes <out_dir>/run_metadata.json: run id, command, version, active
/// kernel backend, the policy decisions in effect, and the full config echo.
/// No timestamps — metadata must be reproducible.
void write_run_metadata(const std::string& out_dir, const std::string& command,
                        const std::string& run_id,
                        const std::map<std::string, std::string>& config);

}  // namespace varibase::io
