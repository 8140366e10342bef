#include <doctest.h>

#include "itercert/tower.hpp"
#include "oracles.hpp"

using namespace itercert;

TEST_CASE("single-level towers reduce to the plain period") {
  auto fib = oracles::fibonacci();
  auto t = chain_period(oracles::chain1(fib), 10);
  CHECK(t.m == 1);
  CHECK(t.L_total == 60);
  CHECK(t.inner == nullptr);

  auto dbl = oracles::doubling();
  auto td = chain_period(oracles::chain1(dbl), 2);
  CHECK(td.m == 2);
  CHECK(td.L_total == 1);
}

TEST_CASE("composed tower periods match brute-force residue periods") {
  auto fib = oracles::fibonacci();
  auto ff = oracles::chain2(fib, fib);
  struct Case { int q; long L; };
  for (auto [q, L] : {Case{2, 8}, Case{3, 12}, Case{5, 60}, Case{7, 24}}) {
    auto t = chain_period(ff, q);
    CHECK(t.L_total == L);
    CHECK(t.inner != nullptr);

    // The claimed period really holds for the composed residues, and it is
    // minimal among divisors. Residues come from the oracle-side reduction
    // in oracles.hpp, independent of the tower code.
    std::uint64_t m = static_cast<std::uint64_t>(t.m);
    std::uint64_t Lt = static_cast<std::uint64_t>(t.L_total);
    std::vector<Int> res;
    for (std::uint64_t n = m; n < m + 3 * Lt; ++n)
      res.push_back(oracles::chain_value_mod(ff, n, q));
    for (std::uint64_t i = 0; i + Lt < res.size(); ++i)
      CHECK(res[i] == res[i + Lt]);
    // The tower period need not be minimal for the composed residues, but
    // any shorter period visible in the window must divide it.
    for (std::uint64_t div = 1; div < Lt; ++div) {
      bool holds = true;
      for (std::uint64_t i = 0; i + div < res.size() && holds; ++i)
        holds = res[i] == res[i + div];
      if (holds) CHECK(Lt % div == 0);
    }
  }
}

TEST_CASE("degenerate outer period collapses the tower") {
  // 2^(n-1) mod 2 is constant 0 from n = 2 on, so the outer period is 1 and
  // the inner level needs no reduction at all.
  auto chain = oracles::chain2(oracles::doubling(), oracles::fibonacci());
  auto t = chain_period(chain, 2);
  CHECK(t.L_total == 1);
  CHECK(t.inner == nullptr);
  for (std::uint64_t n = static_cast<std::uint64_t>(t.m);
       n < static_cast<std::uint64_t>(t.m) + 8; ++n)
    CHECK(eval_chain_mod(chain, n, 2, &t) ==
          oracles::chain_value(chain, n) % 2);
}

TEST_CASE("find_tower_start certifies eventual domination") {
  auto fib = oracles::chain1(oracles::fibonacci());
  // F(n) >= 2 for all n >= 3, but not at n = 1, 2.
  auto ts = find_tower_start(fib, 2);
  CHECK(ts.m == 3);
  // F(n) >= 5 for all n >= 5.
  CHECK(find_tower_start(fib, 5).m == 5);
  CHECK(find_tower_start(fib, 1).m == 1);

  auto ff = oracles::chain2(oracles::fibonacci(), oracles::fibonacci());
  CHECK(find_tower_start(ff, 2).m == 4);  // F(F(4)) = 2

  // An alternating sequence never certifies.
  auto alt = IlrsSpec::validate(1, {-1}, 0, {1});
  CHECK_THROWS_AS(find_tower_start(oracles::chain1(alt), 2),
                  NonMonotoneEvidence);
}

TEST_CASE("eval_chain_mod equals exact evaluation where both reach") {
  auto fib = oracles::fibonacci();
  auto luc = oracles::lucas();
  auto dbl = oracles::doubling();
  std::vector<CompositionChain> chains = {
      oracles::chain1(fib), oracles::chain2(fib, fib),
      oracles::chain2(luc, fib), oracles::chain2(dbl, fib)};
  for (const auto& chain : chains) {
    for (Int q : {2, 3, 5, 7, 11, 13}) {
      auto t = chain_period(chain, q);
      for (std::uint64_t n = 1; n <= 25; ++n) {
        Int expect = oracles::chain_value_mod(chain, n, q);
        CHECK(eval_chain_mod(chain, n, q, &t) == expect);
        CHECK(eval_chain_mod(chain, n, q) == expect);  // self-built tower
      }
    }
  }
}

TEST_CASE("eval_chain_mod reaches indices far beyond exact evaluation") {
  auto ff = oracles::chain2(oracles::fibonacci(), oracles::fibonacci());
  auto t = chain_period(ff, 7);
  // n = 10 reduces through the tower; F(F(10)) = F(55) is still exactly
  // computable, so cross-check it.
  CHECK(eval_chain_mod(ff, 10, 7, &t) == Int("139583862445") % 7);
  // Far out of exact range: consistency under adding the composed period.
  Int big("123456789123456789");
  CHECK(eval_chain_mod(ff, big, 7, &t) ==
        eval_chain_mod(ff, big + t.L_total, 7, &t));
  CHECK(eval_chain_mod(ff, big, 7, &t) ==
        eval_chain_mod(ff, big + 5 * t.L_total, 7, &t));
}

TEST_CASE("tower budget failures surface as exceptions") {
  auto ff = oracles::chain2(oracles::fibonacci(), oracles::fibonacci());
  TowerBudget tight;
  tight.eval.max_steps = 3;
  // Below the tower start the fallback is exact evaluation, which the
  // budget forbids here.
  auto t = chain_period(ff, 7);
  if (t.m > 1)
    CHECK_THROWS_AS(eval_chain_mod(ff, 1, 7, &t, nullptr, tight),
                    IndexBelowTowerStart);
}
