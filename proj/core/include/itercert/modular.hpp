#ifndef ITERCERT_MODULAR_HPP
#define ITERCERT_MODULAR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>

#include "itercert/ilrs.hpp"

namespace itercert {

/// Preperiod/period of (R(n) mod q): the residue sequence is purely
/// L-periodic from index s on. Both are minimal at state-vector level.
struct PeriodInfo {
  Int q;
  std::uint64_t s = 1;
  std::uint64_t L = 1;
  /// True iff s, L <= q^d was actually confirmed (skipped when q^d is
  /// too large to materialize; the detection itself still guarantees it).
  bool bound_checked = false;
};

/// Caps state enumeration in find_period. A repeat is mathematically
/// guaranteed within q^d + 1 states, so hitting the cap means the cap was
/// smaller than q^d.
struct PeriodBudget {
  std::uint64_t max_states = 1u << 24;
};

/// Minimal preperiod and period of the state vector of `spec` mod q, by
/// first-revisit detection on the affine state map over (Z/q)^d.
PeriodInfo find_period(const IlrsSpec& spec, const Int& q,
                       const PeriodBudget& budget = {});

/// Get-or-compute map over (canonical spec key, q). Thread safe; duplicate
/// concurrent computation is allowed, results are identical.
class PeriodCache {
 public:
  virtual ~PeriodCache() = default;

  PeriodInfo get_or_compute(const IlrsSpec& spec, const Int& q,
                            const PeriodBudget& budget = {});

  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

 protected:
  /// Hooks for persistent backends. Called under the lock.
  virtual std::optional<PeriodInfo> lookup(const std::string& key);
  virtual void store(const std::string& key, const PeriodInfo& info);

  static std::string make_key(const IlrsSpec& spec, const Int& q);

  std::mutex mutex_;
  std::map<std::string, PeriodInfo> mem_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

/// R(n) mod q at an arbitrarily large index: steps directly when n is small,
/// otherwise reduces n to the representative s + ((n - s) mod L).
Int eval_mod(const IlrsSpec& spec, const Int& n, const Int& q,
             const PeriodInfo* period = nullptr, PeriodCache* cache = nullptr);

/// Checks that the detected preperiod s satisfies s <= |a0|^d for prime p.
bool check_prime_preperiod_bound(const IlrsSpec& spec, const Int& p,
                                 PeriodCache* cache = nullptr);

}  // namespace itercert

#endif
