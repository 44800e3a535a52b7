#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace ordlab {

inline constexpr const char* kVersion = ORDLAB_VERSION;
inline constexpr const char* kResultSchema = "ordlab.result/1";
inline constexpr const char* kProvenanceSchema = "ordlab.provenance/1";

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Sidecar path for an output file.
inline std::string provenance_path(const std::string& out) { return out + ".prov.json"; }

nlohmann::json read_json_file(const std::string& path);

}  // namespace ordlab
