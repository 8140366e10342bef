#include <doctest.h>

#include <numeric>
#include <random>

#include "itercert/modular.hpp"
#include "oracles.hpp"

using namespace itercert;

TEST_CASE("find_period matches known periods") {
  auto fib = oracles::fibonacci();
  struct Case { int q; std::uint64_t L; };
  for (auto [q, L] : {Case{2, 3}, Case{3, 8}, Case{5, 20}, Case{7, 16},
                      Case{10, 60}, Case{16, 24}, Case{20, 60}}) {
    auto info = find_period(fib, q);
    CHECK(info.s == 1);
    CHECK(info.L == L);
    CHECK(info.bound_checked);
  }

  auto dbl = oracles::doubling();
  auto d2 = find_period(dbl, 2);
  CHECK(d2.s == 2);
  CHECK(d2.L == 1);
  auto d12 = find_period(dbl, 12);
  CHECK(d12.s == 3);  // 1,2,4,8,4,8,... mod 12
  CHECK(d12.L == 2);
}

TEST_CASE("find_period agrees with linear-scan oracle on random inputs") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> ord(1, 3);
  std::uniform_int_distribution<int> mod(2, 20);
  int done = 0;
  while (done < 200) {
    int d = ord(rng);
    std::vector<Int> a(d), init(d);
    for (auto& c : a) c = coeff(rng);
    if (a[0] == 0) continue;
    for (auto& v : init) v = coeff(rng);
    auto spec = IlrsSpec::validate(d, a, coeff(rng), init);
    Int q = mod(rng);

    auto [os, oL] = oracles::brute_period(spec, q);
    REQUIRE(oL != 0);
    auto info = find_period(spec, q);
    CHECK(info.s == os);
    CHECK(info.L == oL);
    ++done;
  }
}

TEST_CASE("detected period reproduces the residue stream") {
  auto pell = oracles::pell();
  for (int q : {4, 9, 11, 30}) {
    auto info = find_period(pell, q);
    // Purely periodic from s on, and (s, L) within the state-space bound.
    Int qd = Int(q) * q;
    CHECK(Int(info.s) <= qd);
    CHECK(Int(info.L) <= qd);
    for (std::uint64_t n = info.s; n < info.s + 2 * info.L; ++n)
      CHECK(oracles::value_mod(pell, n, q) ==
            oracles::value_mod(pell, n + info.L, q));
  }
}

TEST_CASE("coprime lead coefficient forces pure periodicity") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> mod(2, 40);
  auto fib = oracles::fibonacci();
  auto neg = IlrsSpec::validate(2, {-1, 4}, 1, {2, 7});
  for (int i = 0; i < 25; ++i) {
    Int q = mod(rng);
    CHECK(find_period(fib, q).s == 1);
    CHECK(find_period(neg, q).s == 1);
  }
}

TEST_CASE("find_period respects the state budget") {
  auto fib = oracles::fibonacci();
  PeriodBudget tiny;
  tiny.max_states = 10;
  CHECK_THROWS_AS(find_period(fib, 97, tiny), BudgetExceeded);
}

TEST_CASE("eval_mod equals direct stepping") {
  auto fib = oracles::fibonacci();
  CHECK(eval_mod(fib, 10, 7) == 6);  // F(10) = 55
  CHECK(eval_mod(fib, Int("1000000000"), 10) == 5);

  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<std::uint64_t> idx(1, 10'000);
  std::uniform_int_distribution<int> mod(2, 15);
  int done = 0;
  while (done < 100) {
    std::vector<Int> a{coeff(rng), coeff(rng)};
    if (a[0] == 0) continue;
    auto spec = IlrsSpec::validate(2, a, coeff(rng), {coeff(rng), coeff(rng)});
    std::uint64_t n = idx(rng);
    Int q = mod(rng);
    CHECK(eval_mod(spec, n, q) == oracles::value_mod(spec, n, q));
    ++done;
  }
}

TEST_CASE("eval_mod reuses a supplied period and a cache") {
  auto fib = oracles::fibonacci();
  auto info = find_period(fib, 10);
  CHECK(eval_mod(fib, Int("123456789123456789"), 10, &info) ==
        oracles::value_mod(fib, 123456789123456789ull % 60 + 60, 10));

  PeriodCache cache;
  CHECK(eval_mod(fib, Int("1000000000000"), 10, nullptr, &cache) ==
        eval_mod(fib, Int("1000000000000") % 60 + 60, 10));
  CHECK(cache.misses() == 1);
  eval_mod(fib, Int("99999999999999"), 10, nullptr, &cache);
  CHECK(cache.hits() >= 1);
}

TEST_CASE("period cache keys distinguish q and sequence") {
  PeriodCache cache;
  auto fib = oracles::fibonacci();
  auto luc = oracles::lucas();
  auto a = cache.get_or_compute(fib, 10);
  auto b = cache.get_or_compute(fib, 7);
  auto c = cache.get_or_compute(luc, 10);
  CHECK(cache.misses() == 3);
  CHECK(a.L == 60);
  CHECK(b.L == 16);
  CHECK(c.L == 12);  // Lucas mod 10 cycles faster than Fibonacci
  cache.get_or_compute(fib, 10);
  CHECK(cache.hits() == 1);
}

TEST_CASE("prime preperiod bound holds") {
  auto dbl = oracles::doubling();
  for (int p : {2, 3, 5, 7, 13}) CHECK(check_prime_preperiod_bound(dbl, p));
  auto wide = oracles::widegap();
  for (int p : {2, 3, 5, 11}) CHECK(check_prime_preperiod_bound(wide, p));
}
