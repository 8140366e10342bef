#include "itercert/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace itercert {
namespace {

struct PrecisionGuard {
  explicit PrecisionGuard(unsigned bits)
      : saved_(Real::default_precision()) {
    Real::default_precision(
        static_cast<unsigned>(bits * 0.30103) + 4);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  unsigned saved_;
};

struct Cplx {
  Real re, im;
};

Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
Cplx operator*(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cplx operator/(const Cplx& a, const Cplx& b) {
  Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den,
          (a.im * b.re - a.re * b.im) / den};
}
Real modulus(const Cplx& z) { return sqrt(z.re * z.re + z.im * z.im); }

// Monic coefficient vector c[0..d], c[0] = leading 1, descending powers.
std::vector<Real> monic_coeffs(const MinPoly& poly) {
  const int d = poly.degree();
  std::vector<Real> c(d + 1);
  c[0] = 1;
  for (int k = 1; k <= d; ++k) c[k] = Real(-poly.coeffs()[d - k]);
  return c;
}

Cplx poly_eval(const std::vector<Real>& c, const Cplx& z) {
  Cplx acc{c[0], Real(0)};
  for (std::size_t k = 1; k < c.size(); ++k)
    acc = acc * z + Cplx{c[k], Real(0)};
  return acc;
}

Cplx poly_deriv_eval(const std::vector<Real>& c, const Cplx& z) {
  const int d = static_cast<int>(c.size()) - 1;
  Cplx acc{c[0] * d, Real(0)};
  for (int k = 1; k < d; ++k)
    acc = acc * z + Cplx{c[k] * (d - k), Real(0)};
  return acc;
}

// Durand-Kerner iteration; returns all d roots.
std::vector<Cplx> all_roots(const MinPoly& poly, unsigned bits) {
  const int d = poly.degree();
  std::vector<Real> c = monic_coeffs(poly);
  std::vector<Cplx> z(d);
  Cplx seed{Real("0.4"), Real("0.9")};
  Cplx acc{Real(1), Real(0)};
  for (int k = 0; k < d; ++k) {
    acc = acc * seed;
    z[k] = acc;
  }
  Real eps = ldexp(Real(1), -static_cast<int>(bits) + 16);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (int k = 0; k < d; ++k) {
      Cplx num = poly_eval(c, z[k]);
      Cplx den{Real(1), Real(0)};
      for (int j = 0; j < d; ++j)
        if (j != k) den = den * (z[k] - z[j]);
      Cplx delta = num / den;
      z[k] = z[k] - delta;
      Real step = modulus(delta);
      if (step > worst) worst = step;
    }
    if (worst < eps) break;
  }
  return z;
}

// Newton polish of a single root at the current working precision.
Cplx refine_root(const MinPoly& poly, Cplx z, unsigned bits) {
  std::vector<Real> c = monic_coeffs(poly);
  Real eps = ldexp(Real(1), -static_cast<int>(bits) + 8);
  for (int iter = 0; iter < 200; ++iter) {
    Cplx step = poly_eval(c, z) / poly_deriv_eval(c, z);
    z = z - step;
    if (modulus(step) < eps * (Real(1) + modulus(z))) break;
  }
  return z;
}

Cplx cpow(Cplx base, Int e) {
  Cplx acc{Real(1), Real(0)};
  while (e > 0) {
    if ((e & 1) != 0) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::size_t dominant_index(const std::vector<Cplx>& roots) {
  std::size_t best = 0;
  Real best_mod = modulus(roots[0]);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    Real m = modulus(roots[i]);
    if (m > best_mod) {
      best_mod = m;
      best = i;
    }
  }
  return best;
}

}  // namespace

MinPoly MinPoly::validate(std::vector<Int> coeffs) {
  if (coeffs.empty()) throw EmptyOrder();
  if (coeffs.front() == 0) throw ZeroLeadCoefficient();
  MinPoly p;
  p.coeffs_ = std::move(coeffs);
  return p;
}

bool MinPoly::palindromic() const {
  const int d = degree();
  // Monic vector (1, -a_{d-1}, ..., -a_0); compare against its reversal.
  std::vector<Int> c(d + 1);
  c[0] = 1;
  for (int k = 1; k <= d; ++k) c[k] = -coeffs_[d - k];
  for (int i = 0; 2 * i <= d; ++i)
    if (c[i] != c[d - i]) return false;
  return true;
}

std::string MinPoly::canonical_key() const {
  std::ostringstream os;
  os << "poly:";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  return os.str();
}

std::string to_string(AlgebraicKind k) {
  switch (k) {
    case AlgebraicKind::Pisot: return "pisot";
    case AlgebraicKind::Salem: return "salem";
    default: return "neither";
  }
}

IlrsSpec trace_ilrs(const MinPoly& poly) {
  const int d = poly.degree();
  const std::vector<Int>& a = poly.coeffs();
  // e_k = (-1)^{k+1} a_{d-k}; Newton's identities give the power sums.
  std::vector<Int> e(d + 1);
  for (int k = 1; k <= d; ++k) e[k] = (k % 2 == 1) ? a[d - k] : -a[d - k];
  std::vector<Int> p(d + 1);
  for (int k = 1; k <= d; ++k) {
    Int sum = (k % 2 == 1) ? Int(k) * e[k] : Int(-k) * e[k];
    for (int i = 1; i < k; ++i) {
      Int term = e[i] * p[k - i];
      sum += (i % 2 == 1) ? term : -term;
    }
    p[k] = sum;
  }
  std::string name = "trace(" + poly.canonical_key() + ")";
  return IlrsSpec::validate(d, a, Int(0), {p.begin() + 1, p.end()},
                            std::move(name));
}

Classification classify(const MinPoly& poly, unsigned precision_bits,
                        double tolerance) {
  PrecisionGuard guard(precision_bits);
  Classification cls;
  cls.tolerance = tolerance;
  cls.precision_bits = precision_bits;

  const int d = poly.degree();
  if (d == 1) {
    const Int& a0 = poly.coeffs()[0];
    cls.dominant_root = Real(a0);
    cls.kind = a0 >= 2 ? AlgebraicKind::Pisot : AlgebraicKind::Neither;
    return cls;
  }

  std::vector<Cplx> roots = all_roots(poly, precision_bits);
  const std::size_t dom = dominant_index(roots);
  const Real tol(tolerance);

  // Pisot and Salem numbers are real and > 1.
  if (abs(roots[dom].im) > tol || roots[dom].re <= 1) {
    cls.kind = AlgebraicKind::Neither;
    cls.dominant_root = roots[dom].re;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (i != dom) cls.conjugate_moduli.push_back(modulus(roots[i]));
    return cls;
  }
  cls.dominant_root = roots[dom].re;

  int below = 0, near_one = 0, above = 0, band = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i == dom) continue;
    Real m = modulus(roots[i]);
    cls.conjugate_moduli.push_back(m);
    if (m < 1 - tol)
      ++below;
    else if (m > 1 + tol)
      ++above;
    else
      ++band;  // within tolerance of the unit circle
    if (abs(m - 1) <= tol) ++near_one;
  }
  const int others = d - 1;

  if (below == others) {
    cls.kind = AlgebraicKind::Pisot;
    return cls;
  }
  if (poly.palindromic() && d % 2 == 0 && d >= 4) {
    if (above == 0 && below == 1 && near_one == others - 1) {
      cls.kind = AlgebraicKind::Salem;
      return cls;
    }
    if (above > 0) {
      cls.kind = AlgebraicKind::Neither;
      return cls;
    }
    throw PrecisionInsufficient(
        "classify: Salem conjugate pattern undecided at this tolerance");
  }
  if (band > 0)
    throw PrecisionInsufficient(
        "classify: conjugate modulus inside the tolerance band");
  cls.kind = AlgebraicKind::Neither;
  return cls;
}

Int floor_alpha_pow(const MinPoly& poly, const Int& N, unsigned precision_bits,
                    const EvalBudget& budget) {
  if (N < 1) throw NonPositiveIndex("floor_alpha_pow requires N >= 1");
  if (classify(poly, std::min(precision_bits, 256u)).kind ==
      AlgebraicKind::Neither)
    throw NotPisotOrSalem("floor_alpha_pow: polynomial is neither Pisot nor Salem");
  Int trace = eval_exact(trace_ilrs(poly), N, budget);
  const int d = poly.degree();
  if (d == 1) return trace;  // alpha is a rational integer, alpha^N = trace

  PrecisionGuard guard(precision_bits);
  std::vector<Cplx> roots = all_roots(poly, std::min(precision_bits, 256u));
  if (precision_bits > 256)
    for (Cplx& z : roots) z = refine_root(poly, z, precision_bits);
  const std::size_t dom = dominant_index(roots);

  Cplx sum{Real(0), Real(0)};
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != dom) sum = sum + cpow(roots[i], N);
  Real y = -sum.re;

  // Conjugates come in pairs; the imaginary parts must cancel.
  Real err = ldexp(Real(d) * Real(N + 16), -static_cast<int>(precision_bits) + 8);
  if (abs(sum.im) > err)
    throw PrecisionInsufficient("floor_alpha_pow: conjugate sum not real");

  Real fl = floor(y);
  Real dist = (std::min)(Real(y - fl), Real(fl + 1 - y));
  if (dist <= err)
    throw PrecisionInsufficient(
        "floor_alpha_pow: error bound straddles an integer boundary");
  return trace + fl.convert_to<Int>();
}

FloorOffsetBound offset_bound(const MinPoly& poly, const Int& n_min,
                              unsigned precision_bits) {
  if (n_min < 1) throw NonPositiveIndex("offset_bound requires n_min >= 1");
  const int d = poly.degree();
  if (d == 1) {
    Classification c1 = classify(poly, precision_bits);
    if (c1.kind == AlgebraicKind::Neither)
      throw NotPisotOrSalem("offset_bound: polynomial is neither Pisot nor Salem");
    return FloorOffsetBound{Int(1)};
  }
  Classification cls = classify(poly, precision_bits);
  if (cls.kind == AlgebraicKind::Neither)
    throw NotPisotOrSalem("offset_bound: polynomial is neither Pisot nor Salem");

  PrecisionGuard guard(precision_bits);
  Real bound;
  if (cls.kind == AlgebraicKind::Pisot) {
    Real worst = 0;
    for (const Real& m : cls.conjugate_moduli)
      if (m > worst) worst = m;
    bound = Real(d - 1) * pow(worst, Real(n_min)) + 1;
  } else {
    Real recip = cls.conjugate_moduli.front();
    for (const Real& m : cls.conjugate_moduli)
      if (m < recip) recip = m;
    bound = Real(d - 1) + pow(recip, Real(n_min)) + 1;
  }
  // |g| is strictly below `bound` and integral.
  Int G = Int(ceil(bound + ldexp(Real(1), -32)).convert_to<Int>()) - 1;
  if (G < 1) G = 1;
  return FloorOffsetBound{G};
}

}  // namespace itercert
