#ifndef ITERCERT_CACHE_HPP
#define ITERCERT_CACHE_HPP

#include <string>

#include "itercert/modular.hpp"

namespace itercert {

/// Period cache persisted as JSON. Writes take an advisory file lock so
/// concurrent invocations serialize; corrupted entries are skipped and
/// recomputed, never trusted.
class PersistentPeriodCache : public PeriodCache {
 public:
  explicit PersistentPeriodCache(std::string path);

 protected:
  std::optional<PeriodInfo> lookup(const std::string& key) override;
  void store(const std::string& key, const PeriodInfo& info) override;

 private:
  void load_file();
  std::string path_;
};

}  // namespace itercert

#endif
