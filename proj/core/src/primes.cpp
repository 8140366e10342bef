#include "itercert/primes.hpp"

#include <cmath>

namespace itercert {

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int p : small) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // Witness set valid below 3.317e24 (Sorenson-Webster).
  static const Int cap("3317044064679887385961981");
  if (n >= cap)
    throw BudgetExceeded("is_prime: input beyond deterministic witness range");

  Int d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (int a : small) {
    Int x = boost::multiprecision::powm(Int(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < r; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Real theta(double X, std::uint64_t sieve_cap, unsigned digits) {
  if (X < 2) throw ArityMismatch("theta requires X >= 2");
  const auto limit = static_cast<std::uint64_t>(std::floor(X));
  if (limit > sieve_cap) throw BudgetExceeded("theta: X beyond sieve cap");
  PrecisionScope scope(digits);
  Real sum = 0;
  for (std::uint64_t p : sieve_primes(limit)) sum += log(Real(p));
  return sum;
}

}  // namespace itercert
