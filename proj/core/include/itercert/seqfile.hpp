#ifndef ITERCERT_SEQFILE_HPP
#define ITERCERT_SEQFILE_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "itercert/algebraic.hpp"
#include "itercert/ilrs.hpp"

namespace itercert {

/// Line-oriented sequence definition file with three named sections:
///
///   [sequences]
///   fibonacci: order=2 coeffs=1,1 inhom=0 initial=1,1
///   [chains]
///   ff: fibonacci fibonacci          # outermost first
///   [polynomials]
///   golden: 1,1                      # X^2 - 1*X - 1, listed a0,...,a_{d-1}
///
/// '#' starts a comment; blank lines are ignored.
class SequenceFile {
 public:
  static SequenceFile parse(std::istream& in, const std::string& origin = "");
  static SequenceFile load(const std::string& path);

  const IlrsSpec& sequence(const std::string& name) const;
  const MinPoly& polynomial(const std::string& name) const;

  /// Chain by name; a plain sequence name resolves to a single-level chain.
  CompositionChain chain(const std::string& name) const;

  const std::map<std::string, IlrsSpec>& sequences() const { return seqs_; }
  const std::map<std::string, std::vector<std::string>>& chains() const {
    return chains_;
  }
  const std::map<std::string, MinPoly>& polynomials() const { return polys_; }

 private:
  std::map<std::string, IlrsSpec> seqs_;
  std::map<std::string, std::vector<std::string>> chains_;
  std::map<std::string, MinPoly> polys_;
};

}  // namespace itercert

#endif
