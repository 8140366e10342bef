#ifndef ITERCERT_ERRORS_HPP
#define ITERCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace itercert {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- spec / chain construction ------------------------------------------------

struct ZeroLeadCoefficient : Error {
  ZeroLeadCoefficient() : Error("a0 must be nonzero") {}
};

struct EmptyOrder : Error {
  EmptyOrder() : Error("order must be at least 1") {}
};

struct ArityMismatch : Error {
  explicit ArityMismatch(const std::string& what) : Error(what) {}
};

struct ReversibilityRequired : Error {
  explicit ReversibilityRequired(const std::string& what) : Error(what) {}
};

// -- evaluation ---------------------------------------------------------------

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

struct NonPositiveIndex : Error {
  explicit NonPositiveIndex(const std::string& what) : Error(what) {}
};

// -- towers -------------------------------------------------------------------

struct NonMonotoneEvidence : Error {
  explicit NonMonotoneEvidence(const std::string& what) : Error(what) {}
};

struct IndexBelowTowerStart : Error {
  explicit IndexBelowTowerStart(const std::string& what) : Error(what) {}
};

// -- algebraic layer ----------------------------------------------------------

struct PrecisionInsufficient : Error {
  explicit PrecisionInsufficient(const std::string& what) : Error(what) {}
};

struct NotPisotOrSalem : Error {
  explicit NotPisotOrSalem(const std::string& what) : Error(what) {}
};

// -- certificates -------------------------------------------------------------

struct NoFactorFound : Error {
  explicit NoFactorFound(const std::string& what) : Error(what) {}
};

struct HTooLarge : Error {
  explicit HTooLarge(const std::string& what) : Error(what) {}
};

// -- files / CLI --------------------------------------------------------------

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(what) {}
};

}  // namespace itercert

#endif
