#include "itercert/modular.hpp"

#include <sstream>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace itercert {
namespace {

using State = std::vector<Int>;

struct ModIterator {
  // Residues of (R(n), ..., R(n+d-1)) with coefficients reduced once.
  ModIterator(const IlrsSpec& spec, const Int& q) : q_(q), d_(spec.order()) {
    coeffs_.reserve(d_);
    for (const Int& a : spec.coeffs()) coeffs_.push_back(emod(a, q));
    inhom_ = emod(spec.inhom(), q);
    state_.reserve(d_);
    for (const Int& r : spec.initial()) state_.push_back(emod(r, q));
  }

  void step() {
    Int next = inhom_;
    for (int i = 0; i < d_; ++i) next += coeffs_[i] * state_[i];
    next = emod(next, q_);
    for (int i = 0; i + 1 < d_; ++i) state_[i] = std::move(state_[i + 1]);
    state_[d_ - 1] = std::move(next);
  }

  Int q_;
  int d_;
  std::vector<Int> coeffs_;
  Int inhom_;
  State state_;  // state at base index n, starting at n = 1
};

// q^d when it is small enough to materialize.
std::optional<Int> pow_if_small(const Int& q, int d) {
  if (boost::multiprecision::msb(q) * static_cast<std::uint64_t>(d) > 256)
    return std::nullopt;
  Int r = 1;
  for (int i = 0; i < d; ++i) r *= q;
  return r;
}

}  // namespace

PeriodInfo find_period(const IlrsSpec& spec, const Int& q,
                       const PeriodBudget& budget) {
  if (q < 2) throw ArityMismatch("find_period requires q >= 2");
  ModIterator it(spec, q);
  std::map<State, std::uint64_t> seen;
  std::uint64_t n = 1;
  std::uint64_t s = 0, L = 0;
  for (;;) {
    auto [pos, inserted] = seen.emplace(it.state_, n);
    if (!inserted) {
      s = pos->second;
      L = n - s;
      break;
    }
    if (n > budget.max_states)
      throw BudgetExceeded("find_period: state cap hit before a repeat");
    it.step();
    ++n;
  }

  PeriodInfo info;
  info.q = q;
  info.s = s;
  info.L = L;
  if (boost::multiprecision::gcd(boost::multiprecision::abs(spec.lead_coeff()),
                                 q) == 1 &&
      s != 1) {
    // The state map is invertible, so first-revisit must close at index 1.
    throw Error("find_period: coprime lead coefficient but s != 1");
  }
  if (auto qd = pow_if_small(q, spec.order())) {
    if (Int(s) > *qd || Int(L) > *qd)
      throw Error("find_period: (s, L) escaped the q^d range");
    info.bound_checked = true;
  }
  return info;
}

std::string PeriodCache::make_key(const IlrsSpec& spec, const Int& q) {
  std::ostringstream os;
  os << spec.canonical_key() << "|q=" << q;
  return os.str();
}

std::optional<PeriodInfo> PeriodCache::lookup(const std::string& key) {
  auto it = mem_.find(key);
  if (it == mem_.end()) return std::nullopt;
  return it->second;
}

void PeriodCache::store(const std::string& key, const PeriodInfo& info) {
  mem_[key] = info;
}

PeriodInfo PeriodCache::get_or_compute(const IlrsSpec& spec, const Int& q,
                                       const PeriodBudget& budget) {
  const std::string key = make_key(spec, q);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto hit = lookup(key)) {
      ++hits_;
      return *hit;
    }
  }
  PeriodInfo info = find_period(spec, q, budget);
  std::lock_guard<std::mutex> lock(mutex_);
  ++misses_;
  store(key, info);
  return info;
}

Int eval_mod(const IlrsSpec& spec, const Int& n, const Int& q,
             const PeriodInfo* period, PeriodCache* cache) {
  if (n < 1) throw NonPositiveIndex("eval_mod requires n >= 1");
  if (q == 1) return 0;
  if (q < 1) throw ArityMismatch("eval_mod requires q >= 1");

  Int target = n;
  const int d = spec.order();
  // Reduce via the period unless the index is already within direct reach.
  if (n > Int(d) + 4096) {
    PeriodInfo local;
    if (!period) {
      local = cache ? cache->get_or_compute(spec, q) : find_period(spec, q);
      period = &local;
    }
    if (n > Int(period->s) + Int(period->L)) {
      target = Int(period->s) + emod(n - period->s, Int(period->L));
    }
  } else if (period && n > Int(period->s) + Int(period->L)) {
    target = Int(period->s) + emod(n - period->s, Int(period->L));
  }

  ModIterator it(spec, q);
  std::uint64_t steps =
      target <= d ? 0 : (target - d).convert_to<std::uint64_t>();
  for (std::uint64_t k = 0; k < steps; ++k) it.step();
  std::size_t slot = target <= d ? static_cast<std::size_t>(
                                       (target - 1).convert_to<std::uint64_t>())
                                 : static_cast<std::size_t>(d - 1);
  return it.state_[slot];
}

bool check_prime_preperiod_bound(const IlrsSpec& spec, const Int& p,
                                 PeriodCache* cache) {
  PeriodInfo info =
      cache ? cache->get_or_compute(spec, p) : find_period(spec, p);
  Int bound = 1;
  Int a0 = boost::multiprecision::abs(spec.lead_coeff());
  for (int i = 0; i < spec.order(); ++i) bound *= a0;
  return Int(info.s) <= bound;
}

}  // namespace itercert
