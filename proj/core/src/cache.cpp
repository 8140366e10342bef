#include "itercert/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace itercert {
namespace {

using nlohmann::json;

struct FileLock {
  explicit FileLock(const std::string& path) {
    fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd >= 0) ::flock(fd, LOCK_EX);
  }
  ~FileLock() {
    if (fd >= 0) {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  }
  int fd = -1;
};

std::optional<PeriodInfo> entry_from_json(const json& j) {
  if (!j.is_object() || !j.contains("q") || !j.contains("s") ||
      !j.contains("L") || !j.contains("bound_checked"))
    return std::nullopt;
  if (!j["q"].is_string() || !j["s"].is_number_unsigned() ||
      !j["L"].is_number_unsigned() || !j["bound_checked"].is_boolean())
    return std::nullopt;
  PeriodInfo info;
  try {
    info.q = Int(j["q"].get<std::string>());
  } catch (const std::exception&) {
    return std::nullopt;
  }
  info.s = j["s"].get<std::uint64_t>();
  info.L = j["L"].get<std::uint64_t>();
  info.bound_checked = j["bound_checked"].get<bool>();
  if (info.s < 1 || info.L < 1 || info.q < 2) return std::nullopt;
  return info;
}

}  // namespace

PersistentPeriodCache::PersistentPeriodCache(std::string path)
    : path_(std::move(path)) {
  load_file();
}

void PersistentPeriodCache::load_file() {
  std::ifstream in(path_);
  if (!in) return;
  json doc;
  try {
    in >> doc;
  } catch (const json::exception&) {
    return;  // corrupted file, start fresh
  }
  if (!doc.is_object() || !doc.contains("entries") ||
      !doc["entries"].is_object())
    return;
  for (const auto& [key, j] : doc["entries"].items()) {
    if (auto info = entry_from_json(j)) mem_[key] = *info;
  }
}

std::optional<PeriodInfo> PersistentPeriodCache::lookup(
    const std::string& key) {
  return PeriodCache::lookup(key);
}

void PersistentPeriodCache::store(const std::string& key,
                                  const PeriodInfo& info) {
  PeriodCache::store(key, info);

  FileLock lock(path_);
  // Merge with whatever another invocation wrote in the meantime.
  {
    std::ifstream in(path_);
    if (in) {
      json doc;
      try {
        in >> doc;
        if (doc.is_object() && doc.contains("entries") &&
            doc["entries"].is_object()) {
          for (const auto& [k, j] : doc["entries"].items()) {
            if (auto other = entry_from_json(j)) mem_.emplace(k, *other);
          }
        }
      } catch (const json::exception&) {
      }
    }
  }
  json entries = json::object();
  for (const auto& [k, v] : mem_) {
    entries[k] = {{"q", v.q.str()},
                  {"s", v.s},
                  {"L", v.L},
                  {"bound_checked", v.bound_checked}};
  }
  std::ofstream out(path_, std::ios::trunc);
  out << json{{"version", 1}, {"entries", std::move(entries)}}.dump(2) << '\n';
}

}  // namespace itercert
