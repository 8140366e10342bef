#ifndef ITERCERT_ALGEBRAIC_HPP
#define ITERCERT_ALGEBRAIC_HPP

#include <string>
#include <vector>

#include "itercert/primes.hpp"

namespace itercert {

/// Monic integer polynomial X^d - a_{d-1}X^{d-1} - ... - a_1 X - a_0,
/// stored as (a_0, ..., a_{d-1}). Irreducibility is caller-asserted.
class MinPoly {
 public:
  static MinPoly validate(std::vector<Int> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  /// Exact self-reciprocal test on the monic coefficient vector.
  bool palindromic() const;

  std::string canonical_key() const;

 private:
  std::vector<Int> coeffs_;
};

enum class AlgebraicKind { Pisot, Salem, Neither };

std::string to_string(AlgebraicKind k);

struct Classification {
  AlgebraicKind kind = AlgebraicKind::Neither;
  Real dominant_root;
  std::vector<Real> conjugate_moduli;  // non-dominant conjugates
  double tolerance = 0;
  unsigned precision_bits = 0;
};

/// The ILRS of power sums R(n) = alpha_1^n + ... + alpha_d^n. Recurrence
/// coefficients come straight from the polynomial; initial terms are the
/// power sums from Newton's identities, exact over the integers.
IlrsSpec trace_ilrs(const MinPoly& poly);

/// Locates all roots numerically and applies the definitional Pisot/Salem
/// tests at the given tolerance. Throws PrecisionInsufficient when a
/// conjugate modulus is too close to a deciding boundary to call.
Classification classify(const MinPoly& poly, unsigned precision_bits = 256,
                        double tolerance = 5.421010862427522e-20 /* 2^-64 */);

/// Exact floor(alpha^N) for Pisot/Salem alpha: trace value (exact integer)
/// plus the floor of the negated conjugate sum, with the error bound
/// required to exclude the integer boundary.
Int floor_alpha_pow(const MinPoly& poly, const Int& N,
                    unsigned precision_bits = 256,
                    const EvalBudget& budget = {});

/// Integer G with |floor(alpha^N) - Tr(alpha^N)| <= G for all N >= n_min.
struct FloorOffsetBound {
  Int bound;
};

FloorOffsetBound offset_bound(const MinPoly& poly, const Int& n_min = 1,
                              unsigned precision_bits = 256);

}  // namespace itercert

#endif
