#ifndef ITERCERT_ILRS_HPP
#define ITERCERT_ILRS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "itercert/errors.hpp"

namespace itercert {

using Int = boost::multiprecision::cpp_int;

/// Euclidean remainder: result in [0, q) for q >= 1.
inline Int emod(const Int& a, const Int& q) {
  Int r = a % q;
  if (r < 0) r += q;
  return r;
}

/// Caps for exact evaluation. Steps bound the number of recurrence
/// iterations, bits bound the size of any intermediate value.
struct EvalBudget {
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t max_bits = 1'000'000;
};

/// Inhomogeneous linear recurrence sequence
///   R(n+d) = a_{d-1} R(n+d-1) + ... + a_0 R(n) + b,  indices starting at 1,
/// together with its initial segment R(1), ..., R(d).
class IlrsSpec {
 public:
  /// Validates and constructs. The coefficient list is (a_0, ..., a_{d-1}).
  static IlrsSpec validate(int order, std::vector<Int> coeffs, Int inhom,
                           std::vector<Int> initial, std::string name = {});

  int order() const { return order_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  const Int& inhom() const { return inhom_; }
  const std::vector<Int>& initial() const { return initial_; }
  const std::string& name() const { return name_; }
  bool reversible() const { return reversible_; }
  const Int& lead_coeff() const { return coeffs_.front(); }  // a_0

  /// Stable textual key identifying the sequence up to its defining data
  /// (name excluded). Used for caching and certificate round-trips.
  std::string canonical_key() const;

  bool same_sequence(const IlrsSpec& other) const {
    return order_ == other.order_ && coeffs_ == other.coeffs_ &&
           inhom_ == other.inhom_ && initial_ == other.initial_;
  }

 private:
  IlrsSpec() = default;
  int order_ = 0;
  std::vector<Int> coeffs_;
  Int inhom_;
  std::vector<Int> initial_;
  std::string name_;
  bool reversible_ = false;
};

/// Composition f(n) = R_0(R_1(...R_M(n)...)); levels[0] is the outermost.
/// Levels 1..M must be reversible; level 0 is exempt.
class CompositionChain {
 public:
  static CompositionChain create(std::vector<IlrsSpec> levels,
                                 std::string name = {});

  std::size_t size() const { return levels_.size(); }
  std::size_t inner_count() const { return levels_.size() - 1; }  // M
  const IlrsSpec& level(std::size_t j) const { return levels_.at(j); }
  const std::vector<IlrsSpec>& levels() const { return levels_; }
  const std::string& name() const { return name_; }

  /// The chain [R_1, ..., R_M]; requires size() >= 2.
  CompositionChain inner() const;

  /// D = d_0 d_1 ... d_M.
  Int order_product() const;

  std::string canonical_key() const;

 private:
  CompositionChain() = default;
  std::vector<IlrsSpec> levels_;
  std::string name_;
};

/// R(n) by direct iteration from the initial terms; exact.
Int eval_exact(const IlrsSpec& spec, const Int& n, const EvalBudget& budget = {});

/// f(n) = R_0(R_1(...R_M(n)...)) exactly; every intermediate index must be
/// >= 1 and fit the bit budget.
Int eval_chain_exact(const CompositionChain& chain, const Int& n,
                     const EvalBudget& budget = {});

/// Finite positivity/monotonicity evidence over terms 1..K. Evidence only;
/// says nothing beyond the window.
struct WindowReport {
  std::uint64_t window = 0;
  bool all_positive = false;
  bool strictly_increasing = false;
  Int min_value;
  Int max_value;
};

WindowReport check_window(const IlrsSpec& spec, std::uint64_t K,
                          const EvalBudget& budget = {});
WindowReport check_window(const CompositionChain& chain, std::uint64_t K,
                          const EvalBudget& budget = {});

}  // namespace itercert

#endif
