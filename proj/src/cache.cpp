#include "kr/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kr {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  std::ostringstream o;
  for (unsigned int i = 0; i < len; ++i) o << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return o.str();
}

ResultCache::ResultCache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {}

std::string ResultCache::input_hash(const std::string& key) const {
  return sha256_hex("kr-cache\n" + version_ + "\n" + key);
}

std::filesystem::path ResultCache::entry_path(const std::string& key) const {
  return dir_ / (input_hash(key) + ".json");
}

std::optional<nlohmann::json> ResultCache::lookup(const std::string& key) const {
  std::ifstream in(entry_path(key));
  if (!in) return std::nullopt;
  try {
    nlohmann::json entry = nlohmann::json::parse(in);
    if (entry.value("version", "") != version_ || entry.value("input_hash", "") != input_hash(key) ||
        entry.value("key", "") != key || !entry.contains("record"))
      return std::nullopt;
    return entry["record"];
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const nlohmann::json& record) const {
  std::filesystem::create_directories(dir_);
  const nlohmann::json entry = {{"version", version_}, {"input_hash", input_hash(key)}, {"key", key}, {"record", record}};
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  const auto final_path = entry_path(key);
  auto tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
    out << entry.dump(1) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot publish cache entry " + final_path.string());
  }
}

}  // namespace kr
