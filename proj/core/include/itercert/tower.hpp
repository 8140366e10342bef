#ifndef ITERCERT_TOWER_HPP
#define ITERCERT_TOWER_HPP

#include <memory>

#include "itercert/modular.hpp"

namespace itercert {

/// Windowed certification that U(n) >= s0 for all n >= m: exact values up
/// to `window` plus a strictly increasing tail from `tail_start`.
struct TowerStart {
  Int m = 1;
  std::uint64_t window = 0;
  std::uint64_t tail_start = 1;
};

/// Recursive period reduction for f(n) = R_0(R_1(...R_M(n)...)) mod q.
/// The inner composition is reduced modulo the outer level's period, level
/// by level. Purely L_total-periodic from index m on.
struct TowerReduction {
  Int q;
  PeriodInfo outer;    // period of R_0 mod q
  Int m = 1;           // composed sequence purely periodic from here
  Int L_total = 1;
  std::uint64_t evidence_window = 0;
  std::shared_ptr<const TowerReduction> inner;  // null when M = 0 or Q = 1
};

/// Caps for tower-start evidence search.
struct TowerBudget {
  std::uint64_t max_window = 512;
  std::uint64_t min_tail = 3;
  EvalBudget eval;
};

/// Smallest m certifiable from window evidence with U(n) >= s0 for all
/// n >= m, where U is the given (composed) sequence.
TowerStart find_tower_start(const CompositionChain& u, const Int& s0,
                            const TowerBudget& budget = {});

/// Builds the period tower of `chain` mod q.
TowerReduction chain_period(const CompositionChain& chain, const Int& q,
                            PeriodCache* cache = nullptr,
                            const TowerBudget& budget = {});

/// f(n) mod q via the tower; falls back to exact evaluation of the inner
/// composition when n < tower.m.
Int eval_chain_mod(const CompositionChain& chain, const Int& n, const Int& q,
                   const TowerReduction* tower = nullptr,
                   PeriodCache* cache = nullptr, const TowerBudget& budget = {});

}  // namespace itercert

#endif
