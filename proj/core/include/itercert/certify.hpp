#ifndef ITERCERT_CERTIFY_HPP
#define ITERCERT_CERTIFY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "itercert/algebraic.hpp"
#include "itercert/tower.hpp"

namespace itercert {

struct CertifyOptions {
  Int factor_bound = 1'000'000;  // smallest-prime-factor search bound B
  bool strict_paper = false;     // L as the paper's product instead of lcm
  EvalBudget eval;
  TowerBudget tower;
};

/// One h-entry of a divisibility claim: p divides f(Ln+m)+h for all n >= 0.
struct DivisibilityEntry {
  long long h = 0;
  Int p;
  Int period;   // composed tower period L(p)
  Int tower_m;  // tower start the period is valid from
};

struct HypothesisEvidence {
  std::uint64_t window = 0;
  bool all_positive = false;
  bool increasing_tail = false;
};

struct DivisibilityCertificate {
  std::vector<IlrsSpec> chain;  // outermost first
  Int H;
  Int m;
  std::vector<DivisibilityEntry> entries;  // h = -H .. H
  Int L;
  bool strict_paper = false;
  HypothesisEvidence evidence;
};

struct SizeEvidence {
  Int threshold_index = 0;  // exact |f| exceeds the target from here on
  std::uint64_t window = 0; // increasing-tail window certifying beyond
};

struct PrimeFreeIntervalCertificate {
  std::vector<IlrsSpec> chain;
  Int m;
  Int H;                      // |f(m)| - 2
  std::vector<Int> primes;    // all p <= 2H+2
  std::vector<DivisibilityEntry> entries;
  Int L;
  Int n_star;                 // least certified witness index
  Int D;                      // d_0 ... d_M
  std::optional<Int> paper_witness;  // ceil(e^{D theta(2H+2)} / L) when sized
  SizeEvidence size;
  bool strict_paper = false;
};

struct PisotFloorCertificate {
  MinPoly poly;
  std::string kind;           // "pisot" | "salem"
  IlrsSpec trace;
  std::vector<IlrsSpec> inner_chain;
  Int G;                      // floor-offset bound
  Int H_user;
  Int H_effective;            // H_user + G
  DivisibilityCertificate base;
};

using Certificate = std::variant<DivisibilityCertificate,
                                 PrimeFreeIntervalCertificate,
                                 PisotFloorCertificate>;

/// Smallest prime p <= B with f(m) + h divisible by p, found modular-first
/// and cross-checked by trial division when f(m) fits the budget.
Int smallest_prime_factor_chain(const CompositionChain& chain, const Int& m,
                                const Int& h, const Int& bound,
                                PeriodCache* cache = nullptr,
                                const CertifyOptions& opts = {});

DivisibilityCertificate certify_divisibility(const CompositionChain& chain,
                                             const Int& H, const Int& m,
                                             PeriodCache* cache = nullptr,
                                             const CertifyOptions& opts = {});

PrimeFreeIntervalCertificate certify_prime_free_interval(
    const CompositionChain& chain, const Int& m, PeriodCache* cache = nullptr,
    const CertifyOptions& opts = {});

PisotFloorCertificate certify_pisot_floor(const MinPoly& poly,
                                          const CompositionChain& inner_chain,
                                          const Int& H_user, const Int& m,
                                          PeriodCache* cache = nullptr,
                                          const CertifyOptions& opts = {});

// -- estimators ---------------------------------------------------------------

struct DeltaEstimate {
  Real main_term;       // (log n) / (2D)
  double c = 0;         // 1/(2D) - epsilon
  std::string c_symbolic;
  bool main_term_only = true;  // the error term's constant is ineffective
};

DeltaEstimate delta_estimate(const Int& n, const Int& D,
                             double epsilon = 1e-4);

// -- verification -------------------------------------------------------------

struct VerificationCheck {
  std::string claim;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Re-derives every claim through evaluation paths independent of the
/// builders: exact bigints where the budget allows, otherwise a fresh
/// brute-scan period tower. Failures become report entries, not errors.
VerificationReport verify_certificate(const Certificate& cert,
                                      std::uint64_t n_checks,
                                      const CertifyOptions& opts = {});

}  // namespace itercert

#endif
