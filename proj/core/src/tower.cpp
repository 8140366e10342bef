#include "itercert/tower.hpp"

#include <vector>

namespace itercert {
namespace {

// Exact values U(1..K); stops early when the bit budget cuts the window.
std::vector<Int> window_values(const CompositionChain& u, std::uint64_t K,
                               const EvalBudget& budget) {
  std::vector<Int> vals;
  vals.reserve(K);
  for (std::uint64_t n = 1; n <= K; ++n) {
    try {
      vals.push_back(eval_chain_exact(u, Int(n), budget));
    } catch (const BudgetExceeded&) {
      break;
    }
  }
  return vals;
}

}  // namespace

TowerStart find_tower_start(const CompositionChain& u, const Int& s0,
                            const TowerBudget& budget) {
  if (s0 < 1) throw ArityMismatch("find_tower_start requires s0 >= 1");
  for (std::uint64_t K = 16;; K *= 2) {
    if (K > budget.max_window) K = budget.max_window;
    std::vector<Int> vals = window_values(u, K, budget.eval);
    const std::uint64_t N = vals.size();
    if (N >= 4) {
      std::uint64_t last_bad = 0;   // last n with U(n) < s0
      std::uint64_t tail_start = 1; // strictly increasing from here on
      for (std::uint64_t n = 1; n <= N; ++n) {
        if (vals[n - 1] < s0) last_bad = n;
        if (n >= 2 && vals[n - 1] <= vals[n - 2]) tail_start = n;
      }
      const bool tail_ok = N >= tail_start + budget.min_tail;
      const bool crossed = vals[N - 1] >= s0 && last_bad < N;
      if (tail_ok && crossed) {
        // Exact on [m, N]; beyond N certified by the increasing tail.
        return TowerStart{Int(last_bad + 1), N, tail_start};
      }
    }
    if (K >= budget.max_window)
      throw NonMonotoneEvidence(
          "find_tower_start: window evidence cannot certify U(n) >= s0");
  }
}

TowerReduction chain_period(const CompositionChain& chain, const Int& q,
                            PeriodCache* cache, const TowerBudget& budget) {
  if (q < 2) throw ArityMismatch("chain_period requires q >= 2");
  TowerReduction t;
  t.q = q;
  t.outer = cache ? cache->get_or_compute(chain.level(0), q)
                  : find_period(chain.level(0), q);
  if (chain.size() == 1) {
    t.m = Int(t.outer.s);
    t.L_total = Int(t.outer.L);
    return t;
  }

  CompositionChain u = chain.inner();
  TowerStart ts = find_tower_start(u, Int(t.outer.s), budget);
  t.m = ts.m;
  t.evidence_window = ts.window;

  const Int Q(t.outer.L);
  if (Q == 1) {
    t.L_total = 1;
    return t;
  }
  auto sub = std::make_shared<TowerReduction>(
      chain_period(u, Q, cache, budget));
  if (sub->m != 1)
    throw NonMonotoneEvidence(
        "chain_period: reversible inner composition not certified positive "
        "from index 1");
  t.L_total = sub->L_total;
  t.inner = std::move(sub);
  return t;
}

Int eval_chain_mod(const CompositionChain& chain, const Int& n, const Int& q,
                   const TowerReduction* tower, PeriodCache* cache,
                   const TowerBudget& budget) {
  if (n < 1) throw NonPositiveIndex("eval_chain_mod requires n >= 1");
  if (q == 1) return 0;
  TowerReduction local;
  if (!tower) {
    local = chain_period(chain, q, cache, budget);
    tower = &local;
  }
  const IlrsSpec& r0 = chain.level(0);
  if (chain.size() == 1) return eval_mod(r0, n, q, &tower->outer, cache);

  if (n < tower->m) {
    try {
      Int u = eval_chain_exact(chain.inner(), n, budget.eval);
      return eval_mod(r0, u, q, &tower->outer, cache);
    } catch (const BudgetExceeded&) {
      throw IndexBelowTowerStart(
          "eval_chain_mod: n below tower start and exact fallback over "
          "budget");
    }
  }

  const Int s0(tower->outer.s);
  const Int Q(tower->outer.L);
  if (Q == 1) {
    // R_0 mod q is constant from s0 on and U(n) >= s0 for n >= m.
    return eval_mod(r0, s0, q, &tower->outer, cache);
  }
  Int u = eval_chain_mod(chain.inner(), n, Q, tower->inner.get(), cache,
                         budget);
  Int t = s0 + emod(u - s0, Q);
  return eval_mod(r0, t, q, &tower->outer, cache);
}

}  // namespace itercert
