#pragma once
// Content-addressed result cache: one JSON file per input, named by the
// SHA-256 of a canonical description of the job and the tool version.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace kr {

inline constexpr const char* kToolVersion = "1.0.0";

std::string sha256_hex(const std::string& data);

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir, std::string version = kToolVersion);

  // The canonical key text is hashed together with the version.
  std::string input_hash(const std::string& key) const;
  std::filesystem::path entry_path(const std::string& key) const;
  // Unreadable, unparsable or mismatched entries count as misses.
  std::optional<nlohmann::json> lookup(const std::string& key) const;
  // Writes a temporary file next to the entry and renames it into place.
  void store(const std::string& key, const nlohmann::json& record) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string version_;
};

}  // namespace kr
