#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "itercert/certify.hpp"
#include "oracles.hpp"

using namespace itercert;

namespace {

CompositionChain fib_chain() { return oracles::chain1(oracles::fibonacci()); }

CompositionChain ff_chain() {
  return oracles::chain2(oracles::fibonacci(), oracles::fibonacci());
}

}  // namespace

TEST_CASE("smallest prime factor search, modular first") {
  CHECK(smallest_prime_factor_chain(ff_chain(), 5, -1, 100) == 2);  // f=5-1=4
  CHECK(smallest_prime_factor_chain(ff_chain(), 5, 0, 100) == 5);
  CHECK(smallest_prime_factor_chain(fib_chain(), 12, 0, 100) == 2);  // F(12)=144
  CHECK(smallest_prime_factor_chain(fib_chain(), 11, 0, 100) == 89);
  CHECK_THROWS_AS(smallest_prime_factor_chain(fib_chain(), 11, 0, 50),
                  NoFactorFound);
  CHECK_THROWS_AS(smallest_prime_factor_chain(fib_chain(), 2, 0, 100),
                  HTooLarge);  // |F(2) + 0| = 1
}

TEST_CASE("divisibility certificate: Fibonacci multiples of 2") {
  PeriodCache cache;
  auto cert = certify_divisibility(fib_chain(), 0, 12, &cache);
  CHECK(cert.H == 0);
  CHECK(cert.m == 12);
  REQUIRE(cert.entries.size() == 1);
  CHECK(cert.entries[0].p == 2);
  CHECK(cert.L % cert.entries[0].period == 0);
  CHECK(cert.entries[0].period == 3);  // F mod 2 cycles with period 3
  CHECK(cert.evidence.all_positive);

  // The claim itself: 2 | F(L n + 12) for several n, checked exactly.
  for (int n = 0; n <= 4; ++n) {
    Int idx = cert.L * n + 12;
    CHECK(oracles::value(oracles::fibonacci(),
                         static_cast<std::uint64_t>(idx)) % 2 == 0);
  }

  auto report = verify_certificate(cert, 3);
  CHECK(report.all_pass());
}

TEST_CASE("divisibility certificate for a composed chain") {
  PeriodCache cache;
  auto cert = certify_divisibility(ff_chain(), 1, 5, &cache);
  REQUIRE(cert.entries.size() == 3);
  CHECK(cert.entries[0].h == -1);
  CHECK(cert.entries[0].p == 2);  // F(F(5)) - 1 = 4
  CHECK(cert.entries[1].p == 5);
  CHECK(cert.entries[2].p == 2);  // 6

  // Soundness across h and several progression steps. f(Ln+m) is far out
  // of exact reach already at n=1, so residues come from the oracle-side
  // reduction in oracles.hpp.
  for (const auto& e : cert.entries) {
    for (int n = 0; n <= 3; ++n) {
      std::uint64_t idx = static_cast<std::uint64_t>(cert.L * n + cert.m);
      Int r = oracles::chain_value_mod(ff_chain(), idx, e.p);
      CHECK(emod(r + e.h, e.p) == 0);
    }
  }
  CHECK(verify_certificate(cert, 2).all_pass());
}

TEST_CASE("strict period combination multiplies over distinct primes") {
  PeriodCache cache;
  CertifyOptions strict;
  strict.strict_paper = true;
  auto lax = certify_divisibility(ff_chain(), 1, 5, &cache);
  auto cert = certify_divisibility(ff_chain(), 1, 5, &cache, strict);
  CHECK(cert.strict_paper);
  // Entries use p = 2, 5, 2: distinct primes {2, 5} with composed periods
  // 8 and 60, so strict L = 480 while the lcm is 120.
  CHECK(lax.L == 120);
  CHECK(cert.L == 480);
  CHECK(cert.L % lax.L == 0);
  CHECK(verify_certificate(cert, 2).all_pass());
}

TEST_CASE("divisibility certificate rejects H too close to |f(m)|") {
  CHECK_THROWS_AS(certify_divisibility(fib_chain(), 5, 4, nullptr), HTooLarge);
  CHECK_THROWS_AS(certify_divisibility(ff_chain(), 3, 4, nullptr), HTooLarge);
}

TEST_CASE("prime-free interval certificate around F(F(5))") {
  PeriodCache cache;
  auto cert = certify_prime_free_interval(ff_chain(), 5, &cache);
  CHECK(cert.H == 3);  // |f(5)| - 2 = 5 - 2
  CHECK(cert.primes == std::vector<Int>{2, 3, 5, 7});
  CHECK(cert.entries.size() == 7);  // h = -3 .. 3
  CHECK(cert.L == 120);
  CHECK(cert.D == 4);
  CHECK(cert.n_star >= 1);

  // Every prime <= 2H+2 appears among the p_h.
  for (const Int& p : cert.primes) {
    bool found = false;
    for (const auto& e : cert.entries) found = found || e.p == p;
    CHECK(found);
  }

  // The certified statement, re-derived through the oracle-side modular
  // path (the centers themselves are far beyond exact computation): every
  // offset h has an entry whose prime divides f(Ln+m)+h, and that prime is
  // at most 2H+2 < |f|-H, so each covered integer has a proper divisor.
  for (int n = static_cast<int>(cert.n_star);
       n < static_cast<int>(cert.n_star) + 2; ++n) {
    std::uint64_t idx = static_cast<std::uint64_t>(cert.L * n + cert.m);
    for (Int h = -cert.H; h <= cert.H; ++h) {
      const DivisibilityEntry* entry = nullptr;
      for (const auto& e : cert.entries)
        if (e.h == h) entry = &e;
      REQUIRE(entry != nullptr);
      Int r = oracles::chain_value_mod(ff_chain(), idx, entry->p);
      CHECK(emod(r + h, entry->p) == 0);
      CHECK(entry->p <= 2 * cert.H + 2);
    }
  }

  CHECK(verify_certificate(cert, 2).all_pass());
}

TEST_CASE("prime-free interval certificate with a wide window") {
  PeriodCache cache;
  auto cert = certify_prime_free_interval(fib_chain(), 11, &cache);
  CHECK(cert.H == 87);  // F(11) = 89
  CHECK(cert.primes.size() == 40);  // primes up to 176
  CHECK(cert.primes.back() == 173);
  CHECK(cert.paper_witness.has_value());
  // The analytic witness bound e^{D theta(2H+2)} / L is astronomically larger
  // than the constructive n_star.
  CHECK(*cert.paper_witness > cert.n_star);
  CHECK(verify_certificate(cert, 1).all_pass());
}

TEST_CASE("prime-free interval certificate needs |f(m)| >= 4") {
  CHECK_THROWS_AS(certify_prime_free_interval(fib_chain(), 4, nullptr),
                  HTooLarge);
}

TEST_CASE("pisot floor certificate for the golden ratio") {
  PeriodCache cache;
  auto poly = MinPoly::validate({1, 1});
  auto cert = certify_pisot_floor(poly, fib_chain(), 0, 4, &cache);
  CHECK(cert.kind == "pisot");
  CHECK(cert.G == 1);
  CHECK(cert.H_user == 0);
  CHECK(cert.H_effective == 1);
  CHECK(cert.trace.initial() == std::vector<Int>{1, 3});
  REQUIRE(cert.base.entries.size() == 3);

  // Exact statement at the first witness: floor(phi^F(4+L n)) is composite.
  auto tr = trace_ilrs(poly);
  for (int n = 0; n <= 1; ++n) {
    Int idx = cert.base.L * n + 4;
    Int expo = oracles::value(oracles::fibonacci(),
                              static_cast<std::uint64_t>(idx));
    // The conjugate contribution decays like 0.618^N, so resolving the
    // floor needs on the order of N bits.
    unsigned bits = expo.convert_to<unsigned>() + 320;
    Int fl = floor_alpha_pow(poly, expo, bits);
    Int g = fl - eval_exact(tr, expo);
    CHECK(abs(g) <= cert.G);
    bool divisible = false;
    for (const auto& e : cert.base.entries)
      if (e.h == g && fl % e.p == 0 && fl > e.p) divisible = true;
    CHECK(divisible);
  }

  CHECK(verify_certificate(cert, 2).all_pass());
}

TEST_CASE("pisot floor certificate for a Salem number") {
  PeriodCache cache;
  auto poly = MinPoly::validate({-1, 1, 1, 1});
  auto cert = certify_pisot_floor(poly, fib_chain(), 0, 5, &cache);
  CHECK(cert.kind == "salem");
  CHECK(cert.G == 4);
  CHECK(cert.H_effective == 4);
  CHECK(cert.base.entries.size() == 9);
  CHECK(verify_certificate(cert, 1).all_pass());
}

TEST_CASE("pisot floor rejects non-Pisot polynomials") {
  auto sq = MinPoly::validate({4, 0});  // X^2 - 4
  CHECK_THROWS_AS(certify_pisot_floor(sq, fib_chain(), 0, 5, nullptr),
                  NotPisotOrSalem);
}

TEST_CASE("delta estimate constants") {
  auto est = delta_estimate(100, 8);
  CHECK(est.c == doctest::Approx(0.0624).epsilon(1e-9));
  CHECK(est.c_symbolic == "1/16 - epsilon");
  CHECK(est.main_term_only);
  // main term = log(100) / 16
  CHECK(abs(est.main_term - Real("0.2878231366242557")) < 1e-12);

  for (int d : {2, 3, 4}) {
    auto e = delta_estimate(1000, 4 * d);
    CHECK(e.c_symbolic == "1/" + std::to_string(8 * d) + " - epsilon");
    CHECK(e.c == doctest::Approx(1.0 / (8 * d) - 1e-4).epsilon(1e-9));
  }

  auto eps = delta_estimate(100, 8, 1e-6);
  CHECK(eps.c == doctest::Approx(1.0 / 16 - 1e-6).epsilon(1e-12));

  CHECK_THROWS_AS(delta_estimate(2, 8), Error);   // needs n >= 3
  CHECK_THROWS_AS(delta_estimate(100, 0), Error); // needs D >= 1
}

TEST_CASE("verification catches tampering") {
  PeriodCache cache;
  auto good = certify_divisibility(fib_chain(), 0, 12, &cache);
  REQUIRE(verify_certificate(good, 2).all_pass());

  SUBCASE("composite p") {
    auto bad = good;
    bad.entries[0].p = 4;
    auto r = verify_certificate(bad, 2);
    CHECK_FALSE(r.all_pass());
    bool named = false;
    for (const auto& c : r.checks)
      if (!c.pass && c.claim.find("prime") != std::string::npos) named = true;
    CHECK(named);
  }

  SUBCASE("wrong prime that does not divide") {
    auto bad = good;
    bad.entries[0].p = 5;  // 5 does not divide F(12) = 144
    auto r = verify_certificate(bad, 2);
    CHECK_FALSE(r.all_pass());
    bool named = false;
    for (const auto& c : r.checks)
      if (!c.pass && c.claim.find("f(Ln+m)") != std::string::npos) named = true;
    CHECK(named);
  }

  SUBCASE("L not a multiple of the entry period") {
    auto bad = good;
    bad.L = 4;
    auto r = verify_certificate(bad, 2);
    CHECK_FALSE(r.all_pass());
  }

  SUBCASE("shifted progression start") {
    auto bad = good;
    bad.m = 13;  // F(13) = 233, odd
    auto r = verify_certificate(bad, 2);
    CHECK_FALSE(r.all_pass());
  }

  SUBCASE("zero checks is vacuous") {
    auto bad = good;
    bad.entries[0].p = 5;
    auto r = verify_certificate(bad, 0);
    // Structural checks may still run, but no divisibility witnesses do.
    for (const auto& c : r.checks)
      CHECK(c.claim.find("n=") == std::string::npos);
  }
}

TEST_CASE("verification catches interval tampering") {
  PeriodCache cache;
  auto good = certify_prime_free_interval(ff_chain(), 5, &cache);

  SUBCASE("missing prime in the coverage set") {
    auto bad = good;
    bad.primes.pop_back();
    auto r = verify_certificate(bad, 1);
    CHECK_FALSE(r.all_pass());
  }

  SUBCASE("H inflated past the guaranteed width") {
    auto bad = good;
    bad.H = bad.H + 5;
    auto r = verify_certificate(bad, 1);
    CHECK_FALSE(r.all_pass());
  }
}

TEST_CASE("verification catches pisot floor tampering") {
  PeriodCache cache;
  // The Salem case has g = -1 at the first witness, so shrinking the
  // offset bound to zero makes a checkable false claim.
  auto poly = MinPoly::validate({-1, 1, 1, 1});
  auto good = certify_pisot_floor(poly, fib_chain(), 0, 5, &cache);
  REQUIRE(verify_certificate(good, 1).all_pass());
  auto bad = good;
  bad.G = 0;
  auto r = verify_certificate(bad, 1);
  CHECK_FALSE(r.all_pass());

  // A wrong progression start breaks the divisibility claims themselves.
  auto shifted = good;
  shifted.base.m = shifted.base.m + 1;
  CHECK_FALSE(verify_certificate(shifted, 1).all_pass());
}
