#include "itercert/certify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace itercert {
namespace {

std::string int_str(const Int& v) { return v.str(); }

// Memoized towers for one chain across the moduli a builder touches.
class TowerSet {
 public:
  TowerSet(const CompositionChain& chain, PeriodCache* cache,
           const TowerBudget& budget)
      : chain_(chain), cache_(cache), budget_(budget) {}

  const TowerReduction& get(const Int& q) {
    auto it = towers_.find(q);
    if (it == towers_.end())
      it = towers_.emplace(q, chain_period(chain_, q, cache_, budget_)).first;
    return it->second;
  }

 private:
  const CompositionChain& chain_;
  PeriodCache* cache_;
  TowerBudget budget_;
  std::map<Int, TowerReduction> towers_;
};

std::optional<Int> try_eval_chain_exact(const CompositionChain& chain,
                                        const Int& n,
                                        const EvalBudget& budget) {
  try {
    return eval_chain_exact(chain, n, budget);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

HypothesisEvidence gather_evidence(const CompositionChain& chain,
                                   const EvalBudget& budget) {
  HypothesisEvidence ev;
  const CompositionChain* target = &chain;
  CompositionChain inner_store = chain;
  if (chain.size() > 1) {
    inner_store = chain.inner();
    target = &inner_store;
  }
  for (std::uint64_t K = 16; K >= 4; K /= 2) {
    try {
      WindowReport rep = check_window(*target, K, budget);
      ev.window = K;
      ev.all_positive = rep.all_positive;
      ev.increasing_tail = rep.strictly_increasing;
      return ev;
    } catch (const BudgetExceeded&) {
      continue;
    }
  }
  return ev;
}

Int combine_periods(const std::vector<DivisibilityEntry>& entries,
                    bool strict_paper) {
  if (strict_paper) {
    // Strict mode: product over the distinct primes, as in the source analysis.
    std::map<Int, Int> by_prime;
    for (const auto& e : entries) by_prime.emplace(e.p, e.period);
    Int L = 1;
    for (const auto& [p, Lp] : by_prime) L *= Lp;
    return L;
  }
  Int L = 1;
  for (const auto& e : entries) L = boost::multiprecision::lcm(L, e.period);
  return L;
}

// Window search for the first index past which |f| exactly exceeds target,
// with an increasing tail certifying the indices beyond the window.
SizeEvidence size_threshold(const CompositionChain& chain, const Int& target,
                            const TowerBudget& budget) {
  for (std::uint64_t K = 16;; K *= 2) {
    if (K > budget.max_window) K = budget.max_window;
    std::vector<Int> vals;
    for (std::uint64_t n = 1; n <= K; ++n) {
      try {
        vals.push_back(boost::multiprecision::abs(
            eval_chain_exact(chain, Int(n), budget.eval)));
      } catch (const BudgetExceeded&) {
        break;
      }
    }
    const std::uint64_t N = vals.size();
    if (N >= 4) {
      std::uint64_t last_small = 0, tail_start = 1;
      for (std::uint64_t n = 1; n <= N; ++n) {
        if (vals[n - 1] <= target) last_small = n;
        if (n >= 2 && vals[n - 1] <= vals[n - 2]) tail_start = n;
      }
      if (N >= tail_start + budget.min_tail && last_small < N) {
        SizeEvidence ev;
        ev.threshold_index = Int(last_small + 1);
        ev.window = N;
        return ev;
      }
    }
    if (K >= budget.max_window)
      throw NonMonotoneEvidence(
          "size_threshold: cannot certify growth past the target");
  }
}

// -- independent evaluation path for verification -----------------------------
//
// Deliberately re-implemented: periods by linear state scan (no associative
// table), composition by the representative argument, stepping written out
// fresh. Shares nothing with find_period/eval_chain_mod beyond the types.
namespace indep {

struct BrutePeriod {
  Int s, L;
};

std::vector<Int> state_at_base(const IlrsSpec& spec, const Int& q) {
  std::vector<Int> st;
  for (const Int& r : spec.initial()) st.push_back(emod(r, q));
  return st;
}

void step_state(const IlrsSpec& spec, const Int& q, std::vector<Int>& st) {
  Int next = spec.inhom();
  for (int i = 0; i < spec.order(); ++i) next += spec.coeffs()[i] * st[i];
  next = emod(next, q);
  st.erase(st.begin());
  st.push_back(std::move(next));
}

BrutePeriod brute_period(const IlrsSpec& spec, const Int& q,
                         std::uint64_t cap = 1u << 22) {
  std::vector<std::vector<Int>> history;
  std::vector<Int> st = state_at_base(spec, q);
  for (std::uint64_t n = 1; n <= cap; ++n) {
    for (std::uint64_t i = 0; i < history.size(); ++i) {
      if (history[i] == st) return {Int(i + 1), Int(n - i - 1)};
    }
    history.push_back(st);
    step_state(spec, q, st);
  }
  throw BudgetExceeded("brute_period: cap hit");
}

Int direct_value(const IlrsSpec& spec, const Int& index, const Int& q) {
  std::vector<Int> st = state_at_base(spec, q);
  const int d = spec.order();
  if (index <= d)
    return st[static_cast<std::size_t>((index - 1).convert_to<std::uint64_t>())];
  std::uint64_t steps = (index - d).convert_to<std::uint64_t>();
  for (std::uint64_t k = 0; k < steps; ++k) step_state(spec, q, st);
  return st[static_cast<std::size_t>(d - 1)];
}

Int eval_mod(const IlrsSpec& spec, const Int& n, const Int& q) {
  if (q == 1) return 0;
  BrutePeriod pr = brute_period(spec, q);
  Int idx = n;
  if (idx > pr.s + pr.L) idx = pr.s + emod(idx - pr.s, pr.L);
  return direct_value(spec, idx, q);
}

Int eval_chain_mod(const std::vector<IlrsSpec>& levels, const Int& n,
                   const Int& q) {
  if (q == 1) return 0;
  if (levels.size() == 1) return indep::eval_mod(levels[0], n, q);
  BrutePeriod pr = brute_period(levels[0], q);
  Int t;
  if (pr.L == 1) {
    t = pr.s;
  } else {
    std::vector<IlrsSpec> inner(levels.begin() + 1, levels.end());
    Int u = eval_chain_mod(inner, n, pr.L);
    t = pr.s + emod(u - pr.s, pr.L);
  }
  return direct_value(levels[0], t, q);
}

}  // namespace indep

void push_check(VerificationReport& rep, std::string claim, bool pass,
                std::string detail = {}) {
  rep.checks.push_back({std::move(claim), pass, std::move(detail)});
}

// f(N)+h divisibility by p via exact bigints when feasible, else the
// independent modular path.
bool check_divisibility(const std::vector<IlrsSpec>& levels, const Int& N,
                        const Int& h, const Int& p, const EvalBudget& budget) {
  CompositionChain chain = CompositionChain::create(levels);
  if (auto v = try_eval_chain_exact(chain, N, budget))
    return (*v + h) % p == 0;
  Int r = indep::eval_chain_mod(levels, N, p);
  return emod(r + h, p) == 0;
}

void verify_entries_common(VerificationReport& rep,
                           const std::vector<DivisibilityEntry>& entries,
                           const Int& L) {
  for (const auto& e : entries) {
    bool prime_ok = false;
    try {
      prime_ok = is_prime(e.p);
    } catch (const BudgetExceeded&) {
    }
    push_check(rep, "p_h prime (h=" + std::to_string(e.h) + ")", prime_ok,
               "p=" + int_str(e.p));
    push_check(rep, "L multiple of L(p_h) (h=" + std::to_string(e.h) + ")",
               e.period != 0 && L % e.period == 0,
               "L=" + int_str(L) + " L(p)=" + int_str(e.period));
  }
}

void verify_divisibility_claims(VerificationReport& rep,
                                const std::vector<IlrsSpec>& levels,
                                const std::vector<DivisibilityEntry>& entries,
                                const Int& L, const Int& m,
                                std::uint64_t n_checks,
                                const EvalBudget& budget) {
  for (std::uint64_t n = 0; n < n_checks; ++n) {
    const Int N = L * n + m;
    // One independent residue per prime, reused across h.
    std::map<Int, Int> residues;
    std::optional<Int> exact = try_eval_chain_exact(
        CompositionChain::create(levels), N, budget);
    for (const auto& e : entries) {
      bool ok;
      if (exact) {
        ok = (*exact + e.h) % e.p == 0;
      } else {
        auto it = residues.find(e.p);
        if (it == residues.end())
          it = residues.emplace(e.p, indep::eval_chain_mod(levels, N, e.p))
                   .first;
        ok = emod(it->second + e.h, e.p) == 0;
      }
      push_check(rep,
                 "p_h | f(Ln+m)+h (h=" + std::to_string(e.h) +
                     ", n=" + std::to_string(n) + ")",
                 ok, "p=" + int_str(e.p));
    }
  }
}

}  // namespace

Int smallest_prime_factor_chain(const CompositionChain& chain, const Int& m,
                                const Int& h, const Int& bound,
                                PeriodCache* cache,
                                const CertifyOptions& opts) {
  if (bound < 2 || bound > 100'000'000)
    throw ArityMismatch("factor bound out of range");
  std::optional<Int> exact = try_eval_chain_exact(chain, m, opts.eval);
  if (exact && boost::multiprecision::abs(*exact + h) < 2)
    throw HTooLarge("smallest_prime_factor_chain: |f(m)+h| < 2");

  TowerSet towers(chain, cache, opts.tower);
  const auto primes = sieve_primes(bound.convert_to<std::uint64_t>());
  for (std::uint64_t p64 : primes) {
    const Int p(p64);
    const TowerReduction& tower = towers.get(p);
    Int r = eval_chain_mod(chain, m, p, &tower, cache, opts.tower);
    if (emod(r + h, p) == 0) {
      if (exact && (*exact + h) % p != 0)
        throw Error("smallest_prime_factor_chain: modular/exact disagreement");
      return p;
    }
  }
  throw NoFactorFound("no prime <= " + int_str(bound) + " divides f(m)+h");
}

DivisibilityCertificate certify_divisibility(const CompositionChain& chain,
                                             const Int& H, const Int& m,
                                             PeriodCache* cache,
                                             const CertifyOptions& opts) {
  if (H < 0) throw ArityMismatch("H must be >= 0");
  if (H > 100'000) throw BudgetExceeded("H too large to enumerate");
  if (m < 1) throw NonPositiveIndex("m must be >= 1");

  Int f_m = eval_chain_exact(chain, m, opts.eval);
  if (boost::multiprecision::abs(f_m) - H < 2)
    throw HTooLarge("certify_divisibility: |f(m)| - H < 2");

  TowerSet towers(chain, cache, opts.tower);
  DivisibilityCertificate cert;
  cert.chain = chain.levels();
  cert.H = H;
  cert.m = m;
  cert.strict_paper = opts.strict_paper;

  const long long Hll = H.convert_to<long long>();
  for (long long h = -Hll; h <= Hll; ++h) {
    Int p = smallest_prime_factor_chain(chain, m, Int(h), opts.factor_bound,
                                        cache, opts);
    const TowerReduction& tower = towers.get(p);
    if (m < tower.m)
      throw IndexBelowTowerStart(
          "certify_divisibility: m below tower start for p=" + int_str(p));
    cert.entries.push_back({h, p, tower.L_total, tower.m});
  }
  cert.L = combine_periods(cert.entries, opts.strict_paper);
  cert.evidence = gather_evidence(chain, opts.eval);
  return cert;
}

PrimeFreeIntervalCertificate certify_prime_free_interval(
    const CompositionChain& chain, const Int& m, PeriodCache* cache,
    const CertifyOptions& opts) {
  if (m < 1) throw NonPositiveIndex("m must be >= 1");
  Int f_m = eval_chain_exact(chain, m, opts.eval);
  Int a = boost::multiprecision::abs(f_m);
  if (a < 4) throw HTooLarge("certify_prime_free_interval: |f(m)| < 4");

  PrimeFreeIntervalCertificate cert;
  cert.chain = chain.levels();
  cert.m = m;
  cert.H = a - 2;
  cert.strict_paper = opts.strict_paper;
  cert.D = chain.order_product();

  const Int two_h_plus_2 = 2 * cert.H + 2;
  if (two_h_plus_2 > 10'000'000)
    throw BudgetExceeded("certify_prime_free_interval: prime set too large");
  const auto primes = sieve_primes(two_h_plus_2.convert_to<std::uint64_t>());
  for (std::uint64_t p : primes) cert.primes.emplace_back(p);

  // Smallest prime factors across the whole residue range [2, 2H+2].
  const long long Hll = cert.H.convert_to<long long>();
  std::set<Int> seen;
  for (long long h = -Hll; h <= Hll; ++h) {
    Int av = boost::multiprecision::abs(f_m + h);
    Int p_h = 0;
    for (const Int& p : cert.primes) {
      if (av % p == 0) {
        p_h = p;
        break;
      }
    }
    if (p_h == 0)
      throw Error("certify_prime_free_interval: no factor in the prime set");
    seen.insert(p_h);
    cert.entries.push_back({h, p_h, Int(0), Int(0)});
  }
  if (seen != std::set<Int>(cert.primes.begin(), cert.primes.end()))
    throw Error(
        "certify_prime_free_interval: prime-set identity {p_h} = {p <= 2H+2} "
        "failed");

  TowerSet towers(chain, cache, opts.tower);
  std::map<Int, const TowerReduction*> per_prime;
  for (const Int& p : cert.primes) per_prime[p] = &towers.get(p);
  for (auto& e : cert.entries) {
    const TowerReduction* t = per_prime.at(e.p);
    if (m < t->m)
      throw IndexBelowTowerStart(
          "certify_prime_free_interval: m below tower start for p=" +
          int_str(e.p));
    e.period = t->L_total;
    e.tower_m = t->m;
  }
  cert.L = combine_periods(cert.entries, opts.strict_paper);

  cert.size = size_threshold(chain, two_h_plus_2, opts.tower);
  // Least witness n with Ln+m at or past the certified threshold.
  Int need = cert.size.threshold_index - m;
  cert.n_star = need <= 0 ? Int(1) : Int((need + cert.L - 1) / cert.L);
  if (cert.n_star < 1) cert.n_star = 1;

  // Analytic witness n = ceil(e^{D theta(2H+2)} / L), materialized when
  // its size is sane.
  try {
    const double X = two_h_plus_2.convert_to<double>();
    Real exponent = Real(cert.D) * theta(X);
    if (exponent < 50'000) {
      // Enough digits to pin the integer part of e^{D theta} exactly.
      unsigned digits =
          static_cast<unsigned>(exponent.convert_to<double>() * 0.4343) + 32;
      PrecisionScope scope(digits);
      Real w = ceil(exp(Real(cert.D) * theta(X, 100'000'000, digits)) /
                    Real(cert.L));
      cert.paper_witness = w.convert_to<Int>();
    }
  } catch (const BudgetExceeded&) {
  }
  return cert;
}

PisotFloorCertificate certify_pisot_floor(const MinPoly& poly,
                                          const CompositionChain& inner_chain,
                                          const Int& H_user, const Int& m,
                                          PeriodCache* cache,
                                          const CertifyOptions& opts) {
  Classification cls = classify(poly);
  if (cls.kind == AlgebraicKind::Neither)
    throw NotPisotOrSalem("certify_pisot_floor: " + poly.canonical_key());
  if (H_user < 0) throw ArityMismatch("H' must be >= 0");

  IlrsSpec trace = trace_ilrs(poly);
  std::vector<IlrsSpec> levels;
  levels.push_back(trace);
  for (const auto& s : inner_chain.levels()) levels.push_back(s);
  CompositionChain chain = CompositionChain::create(std::move(levels));

  PisotFloorCertificate cert{
      poly,          to_string(cls.kind),
      trace,         inner_chain.levels(),
      offset_bound(poly).bound,
      H_user,        Int(0),
      DivisibilityCertificate{}};
  cert.H_effective = H_user + cert.G;
  cert.base = certify_divisibility(chain, cert.H_effective, m, cache, opts);
  return cert;
}

DeltaEstimate delta_estimate(const Int& n, const Int& D, double epsilon) {
  if (n < 3) throw ArityMismatch("delta_estimate requires n >= 3");
  if (D < 1) throw ArityMismatch("delta_estimate requires D >= 1");
  DeltaEstimate est;
  PrecisionScope scope(40);
  est.main_term = log(Real(n)) / (2 * Real(D));
  est.c = 1.0 / (2 * D.convert_to<double>()) - epsilon;
  est.c_symbolic = "1/" + Int(2 * D).str() + " - epsilon";
  return est;
}

VerificationReport verify_certificate(const Certificate& cert,
                                      std::uint64_t n_checks,
                                      const CertifyOptions& opts) {
  VerificationReport rep;

  if (const auto* dc = std::get_if<DivisibilityCertificate>(&cert)) {
    verify_entries_common(rep, dc->entries, dc->L);
    verify_divisibility_claims(rep, dc->chain, dc->entries, dc->L, dc->m,
                               n_checks, opts.eval);
    return rep;
  }

  if (const auto* ic = std::get_if<PrimeFreeIntervalCertificate>(&cert)) {
    // Prime set equals all primes <= 2H+2, by an independent sieve.
    const Int bound = 2 * ic->H + 2;
    std::vector<Int> fresh;
    for (std::uint64_t p : sieve_primes(bound.convert_to<std::uint64_t>()))
      fresh.emplace_back(p);
    push_check(rep, "prime set = {p <= 2H+2}", fresh == ic->primes);
    std::set<Int> used;
    for (const auto& e : ic->entries) used.insert(e.p);
    push_check(rep, "{p_h} covers the prime set",
               used == std::set<Int>(ic->primes.begin(), ic->primes.end()));
    verify_entries_common(rep, ic->entries, ic->L);

    // Size threshold re-derivation.
    bool size_ok = false;
    std::string size_detail;
    try {
      CompositionChain chain = CompositionChain::create(ic->chain);
      SizeEvidence ev = size_threshold(chain, bound, opts.tower);
      size_ok = ev.threshold_index <= ic->size.threshold_index &&
                ic->L * ic->n_star + ic->m >= ic->size.threshold_index;
      size_detail = "threshold=" + int_str(ev.threshold_index);
    } catch (const Error& e) {
      size_detail = e.what();
    }
    push_check(rep, "|f(L n_star + m)| > 2H+2", size_ok, size_detail);

    for (std::uint64_t k = 0; k < n_checks; ++k) {
      const Int n = ic->n_star + k;
      const Int N = ic->L * n + ic->m;
      std::map<Int, Int> residues;
      for (const Int& p : ic->primes)
        residues.emplace(p, indep::eval_chain_mod(ic->chain, N, p));
      bool all_ok = true;
      for (const auto& e : ic->entries) {
        auto it = residues.find(e.p);
        if (it == residues.end()) {
          all_ok = false;
          push_check(rep,
                     "p_h in prime set (h=" + std::to_string(e.h) +
                         ", n=" + int_str(n) + ")",
                     false, "p=" + int_str(e.p));
          continue;
        }
        if (emod(it->second + e.h, e.p) != 0) {
          all_ok = false;
          push_check(rep,
                     "p_h | f(Ln+m)+h (h=" + std::to_string(e.h) +
                         ", n=" + int_str(n) + ")",
                     false, "p=" + int_str(e.p));
        }
      }
      push_check(rep,
                 "interval [|f|-H, |f|+H] fully covered (n=" + int_str(n) + ")",
                 all_ok);
    }
    return rep;
  }

  const auto& pc = std::get<PisotFloorCertificate>(cert);
  verify_entries_common(rep, pc.base.entries, pc.base.L);
  verify_divisibility_claims(rep, pc.base.chain, pc.base.entries, pc.base.L,
                             pc.base.m, n_checks, opts.eval);

  // Floor-level checks where the exponent is exactly evaluable.
  Classification cls;
  try {
    cls = classify(pc.poly);
  } catch (const Error&) {
  }
  for (std::uint64_t n = 0; n < n_checks; ++n) {
    const Int N = pc.base.L * n + pc.base.m;
    std::string tag = " (n=" + std::to_string(n) + ")";
    try {
      CompositionChain inner = CompositionChain::create(pc.inner_chain);
      Int E = eval_chain_exact(inner, N, opts.eval);
      // Precision adapted to the decay/growth of the conjugates.
      unsigned bits = 320;
      if (pc.poly.degree() > 1 && !cls.conjugate_moduli.empty()) {
        double worst = 0;
        for (const Real& mo : cls.conjugate_moduli) {
          double v = mo.convert_to<double>();
          if (v > worst) worst = v;
        }
        if (worst > 0 && worst < 1) {
          double need = -E.convert_to<double>() * std::log2(worst);
          if (need > 4e6) throw BudgetExceeded("floor precision out of reach");
          bits = static_cast<unsigned>(need) + 320;
        }
      }
      Int fl = floor_alpha_pow(pc.poly, E, bits, opts.eval);
      Int tr = eval_exact(trace_ilrs(pc.poly), E, opts.eval);
      Int g = fl - tr;
      push_check(rep, "floor = trace + g with |g| <= G" + tag,
                 boost::multiprecision::abs(g) <= pc.G,
                 "g=" + int_str(g) + " G=" + int_str(pc.G));
      const long long Hu = pc.H_user.convert_to<long long>();
      for (long long h = -Hu; h <= Hu; ++h) {
        Int k = g + h;
        const DivisibilityEntry* entry = nullptr;
        for (const auto& e : pc.base.entries)
          if (Int(e.h) == k) entry = &e;
        bool ok = entry && (fl + h) % entry->p == 0 && fl + h > entry->p;
        push_check(rep,
                   "floor(alpha^U)+h composite (h=" + std::to_string(h) + ")" +
                       tag,
                   ok, entry ? "p=" + int_str(entry->p) : "no entry for g+h");
      }
    } catch (const BudgetExceeded& e) {
      push_check(rep, "floor check skipped" + tag, true, e.what());
    } catch (const Error& e) {
      push_check(rep, "floor check" + tag, false, e.what());
    }
  }
  return rep;
}

}  // namespace itercert
