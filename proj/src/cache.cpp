#include "knotpi/cache.hpp"

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace knotpi {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string CacheKey::file_name() const {
  std::string safe = module;
  for (char& c : safe)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
  return safe + "_n" + std::to_string(n) + "_d" + std::to_string(d) + "_w" + std::to_string(weight) + "_v" + version +
         ".json";
}

json CacheKey::to_json() const {
  return {{"module", module}, {"n", n}, {"d", d}, {"weight", weight}, {"version", version}};
}

std::string payload_checksum(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ComponentCache::ComponentCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

std::optional<json> ComponentCache::load(const CacheKey& key) const {
  const auto path = dir_ / key.file_name();
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  in.close();
  try {
    auto j = json::parse(buf.str());
    const auto& payload = j.at("payload");
    if (j.at("key") == key.to_json() && j.at("checksum").get<std::string>() == payload_checksum(payload.dump())) {
      ++hits_;
      return payload;
    }
  } catch (const json::exception&) {
  }
  // never trust it; the caller recomputes and overwrites
  std::error_code ec;
  fs::remove(path, ec);
  ++discarded_;
  ++misses_;
  return std::nullopt;
}

void ComponentCache::store(const CacheKey& key, const json& payload) const {
  static std::atomic<unsigned long> counter{0};
  json j;
  j["key"] = key.to_json();
  j["checksum"] = payload_checksum(payload.dump());
  j["payload"] = payload;
  const auto final_path = dir_ / key.file_name();
  const auto tmp = dir_ / (key.file_name() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << j.dump() << "\n";
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

std::optional<fs::path> resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return fs::path(*flag);
  if (const char* env = std::getenv("KNOTPI_CACHE"); env && *env) return fs::path(env);
  return std::nullopt;
}

json page_to_json(const SpectralSequencePage& page) {
  json j;
  j["r"] = page.r;
  j["truncation"] = page.truncation;
  j["entries"] = json::array();
  for (const auto& [pq, e] : page.entries) j["entries"].push_back({pq.first, pq.second, e.dimension, e.stable});
  j["differentials"] = json::array();
  for (const auto& [pq, m] : page.differentials) {
    json entries = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& [row, v] : m.column(c).entries()) entries.push_back({row, c, v.to_string()});
    j["differentials"].push_back({{"p", pq.first}, {"q", pq.second}, {"rows", m.rows()}, {"cols", m.cols()},
                                  {"entries", std::move(entries)}});
  }
  return j;
}

SpectralSequencePage page_from_json(const json& j) {
  SpectralSequencePage page;
  page.r = j.at("r").get<int>();
  page.truncation = j.at("truncation").get<int>();
  for (const auto& e : j.at("entries"))
    page.entries[{e.at(0).get<int>(), e.at(1).get<int>()}] = {e.at(2).get<std::size_t>(), e.at(3).get<bool>()};
  for (const auto& jd : j.at("differentials")) {
    SparseRationalMatrix m(jd.at("rows").get<std::size_t>(), jd.at("cols").get<std::size_t>());
    for (const auto& e : jd.at("entries"))
      m.set(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(), Rational::parse(e.at(2).get<std::string>()));
    page.differentials[{jd.at("p").get<int>(), jd.at("q").get<int>()}] = std::move(m);
  }
  return page;
}

}  // namespace knotpi
