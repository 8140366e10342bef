#ifndef ITERCERT_PRIMES_HPP
#define ITERCERT_PRIMES_HPP

#include <cstdint>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "itercert/ilrs.hpp"

namespace itercert {

using Real = boost::multiprecision::mpfr_float;

/// All primes <= limit, by sieve of Eratosthenes.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

/// Deterministic Miller-Rabin with the witness set
/// {2,3,5,7,11,13,17,19,23,29,31,37}, proven correct for n < 3.317e24.
/// Larger inputs are rejected with BudgetExceeded rather than answered
/// probabilistically.
bool is_prime(const Int& n);

/// Chebyshev theta(X) = sum of log p over primes p <= X, summed with
/// logarithms at the requested decimal precision.
Real theta(double X, std::uint64_t sieve_cap = 100'000'000,
           unsigned digits = 40);

/// Restores the global mpfr working precision on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits)
      : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

}  // namespace itercert

#endif
