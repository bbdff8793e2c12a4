#pragma once

// On-disk cache for expensive components. One JSON file per key, written to a
// temporary name and renamed into place, so readers never see a partial file
// and concurrent writers just race to an identical result. Each file repeats
// its key and carries a checksum of the payload; anything that does not check
// out is deleted and recomputed.

#include "knotpi/cosimplicial.hpp"

#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>

namespace knotpi {

/// Bump whenever a cached component changes meaning or layout.
inline constexpr const char* kCodeVersion = "1";

struct CacheKey {
  std::string module;
  int n = 0;
  int d = 0;
  int weight = 0;
  std::string version = kCodeVersion;

  [[nodiscard]] std::string file_name() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

class ComponentCache {
 public:
  explicit ComponentCache(std::filesystem::path dir);

  [[nodiscard]] const std::filesystem::path& dir() const { return dir_; }
  [[nodiscard]] std::optional<nlohmann::ordered_json> load(const CacheKey& key) const;
  void store(const CacheKey& key, const nlohmann::ordered_json& payload) const;

  [[nodiscard]] std::size_t hits() const { return hits_; }
  [[nodiscard]] std::size_t misses() const { return misses_; }
  [[nodiscard]] std::size_t discarded() const { return discarded_; }

 private:
  std::filesystem::path dir_;
  mutable std::atomic<std::size_t> hits_{0};
  mutable std::atomic<std::size_t> misses_{0};
  mutable std::atomic<std::size_t> discarded_{0};
};

/// --cache-dir wins over KNOTPI_CACHE; neither set means no cache.
std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::string>& flag);

/// 64-bit FNV-1a, as 16 hex digits.
std::string payload_checksum(const std::string& bytes);

nlohmann::ordered_json page_to_json(const SpectralSequencePage& page);
SpectralSequencePage page_from_json(const nlohmann::ordered_json& j);

}  // namespace knotpi
