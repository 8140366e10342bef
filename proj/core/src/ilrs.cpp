#include "itercert/ilrs.hpp"

#include <sstream>

namespace itercert {
namespace {

std::uint64_t bit_size(const Int& v) {
  if (v == 0) return 1;
  return boost::multiprecision::msb(boost::multiprecision::abs(v)) + 1;
}

}  // namespace

IlrsSpec IlrsSpec::validate(int order, std::vector<Int> coeffs, Int inhom,
                            std::vector<Int> initial, std::string name) {
  if (order < 1) throw EmptyOrder();
  if (coeffs.size() != static_cast<std::size_t>(order))
    throw ArityMismatch("coeffs must have exactly d entries");
  if (initial.size() != static_cast<std::size_t>(order))
    throw ArityMismatch("initial must have exactly d entries");
  if (coeffs.front() == 0) throw ZeroLeadCoefficient();
  IlrsSpec s;
  s.order_ = order;
  s.coeffs_ = std::move(coeffs);
  s.inhom_ = std::move(inhom);
  s.initial_ = std::move(initial);
  s.name_ = std::move(name);
  s.reversible_ = s.coeffs_.front() == 1 || s.coeffs_.front() == -1;
  return s;
}

std::string IlrsSpec::canonical_key() const {
  std::ostringstream os;
  os << "d=" << order_ << ";a=";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ";b=" << inhom_ << ";r=";
  for (std::size_t i = 0; i < initial_.size(); ++i) {
    if (i) os << ',';
    os << initial_[i];
  }
  return os.str();
}

CompositionChain CompositionChain::create(std::vector<IlrsSpec> levels,
                                          std::string name) {
  if (levels.empty()) throw ArityMismatch("chain must have at least one level");
  for (std::size_t j = 1; j < levels.size(); ++j) {
    if (!levels[j].reversible()) {
      throw ReversibilityRequired("chain level " + std::to_string(j) +
                                  " must be reversible (a0 in {-1,1})");
    }
  }
  CompositionChain c;
  c.levels_ = std::move(levels);
  c.name_ = std::move(name);
  return c;
}

CompositionChain CompositionChain::inner() const {
  if (levels_.size() < 2)
    throw ArityMismatch("chain has no inner levels");
  return create({levels_.begin() + 1, levels_.end()});
}

Int CompositionChain::order_product() const {
  Int D = 1;
  for (const auto& s : levels_) D *= s.order();
  return D;
}

std::string CompositionChain::canonical_key() const {
  std::string key;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (j) key += '|';
    key += levels_[j].canonical_key();
  }
  return key;
}

Int eval_exact(const IlrsSpec& spec, const Int& n, const EvalBudget& budget) {
  if (n < 1) throw NonPositiveIndex("eval_exact requires n >= 1");
  const int d = spec.order();
  if (n <= d) return spec.initial()[static_cast<std::size_t>(n - 1)];
  if (n - d > budget.max_steps)
    throw BudgetExceeded("eval_exact: index exceeds step budget");

  std::vector<Int> window = spec.initial();
  Int value;
  const std::uint64_t steps = (n - d).convert_to<std::uint64_t>();
  for (std::uint64_t k = 0; k < steps; ++k) {
    value = spec.inhom();
    for (int i = 0; i < d; ++i) value += spec.coeffs()[i] * window[i];
    if (bit_size(value) > budget.max_bits)
      throw BudgetExceeded("eval_exact: value exceeds bit budget");
    for (int i = 0; i + 1 < d; ++i) window[i] = std::move(window[i + 1]);
    window[d - 1] = value;
  }
  return window[d - 1];
}

Int eval_chain_exact(const CompositionChain& chain, const Int& n,
                     const EvalBudget& budget) {
  if (n < 1) throw NonPositiveIndex("eval_chain_exact requires n >= 1");
  Int idx = n;
  for (std::size_t j = chain.size(); j-- > 0;) {
    if (idx < 1)
      throw NonPositiveIndex("inner value fell below 1 at level " +
                             std::to_string(j + 1));
    idx = eval_exact(chain.level(j), idx, budget);
  }
  return idx;
}

namespace {

template <typename Eval>
WindowReport window_impl(Eval&& eval, std::uint64_t K) {
  if (K < 2) throw ArityMismatch("window K must be at least 2");
  WindowReport rep;
  rep.window = K;
  rep.all_positive = true;
  rep.strictly_increasing = true;
  Int prev;
  for (std::uint64_t n = 1; n <= K; ++n) {
    Int v = eval(Int(n));
    if (v <= 0) rep.all_positive = false;
    if (n == 1) {
      rep.min_value = rep.max_value = v;
    } else {
      if (v <= prev) rep.strictly_increasing = false;
      if (v < rep.min_value) rep.min_value = v;
      if (v > rep.max_value) rep.max_value = v;
    }
    prev = std::move(v);
  }
  return rep;
}

}  // namespace

WindowReport check_window(const IlrsSpec& spec, std::uint64_t K,
                          const EvalBudget& budget) {
  return window_impl([&](const Int& n) { return eval_exact(spec, n, budget); },
                     K);
}

WindowReport check_window(const CompositionChain& chain, std::uint64_t K,
                          const EvalBudget& budget) {
  return window_impl(
      [&](const Int& n) { return eval_chain_exact(chain, n, budget); }, K);
}

}  // namespace itercert
