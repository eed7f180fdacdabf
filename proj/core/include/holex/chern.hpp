#pragma once

#include "holex/rational.hpp"

#include <optional>
#include <vector>

namespace holex::chern {

// Cross-section of the two supported intersection rings: a smooth projective
// curve of given genus carrying a degree-degL line bundle, or projective
// m-space with the hyperplane bundle.
struct RingSpec {
  enum class Kind { Curve, ProjSpace };
  Kind kind = Kind::Curve;
  int genus = 0;
  int deg_l = 1;
  int m = 1;  // complex dimension of the manifold

  static RingSpec curve(int genus, int deg_l);
  static RingSpec proj_space(int m);
  void validate() const;
};

// Class in Q[H]/(H^{m+1}); coeff[k] multiplies H^k. On a curve H is the point
// class. integral() reads off the top-degree coefficient.
class CohomologyClass {
 public:
  explicit CohomologyClass(int top_degree);
  static CohomologyClass scalar(int top_degree, const Rational& value);
  static CohomologyClass generator(int top_degree);

  int top_degree() const { return static_cast<int>(coeff_.size()) - 1; }
  const Rational& coeff(int k) const { return coeff_.at(k); }
  Rational& coeff(int k) { return coeff_.at(k); }
  Rational integral() const { return coeff_.back(); }

  CohomologyClass operator+(const CohomologyClass& other) const;
  CohomologyClass operator-(const CohomologyClass& other) const;
  CohomologyClass operator*(const CohomologyClass& other) const;  // truncated
  CohomologyClass operator*(const Rational& scalar) const;
  CohomologyClass pow(long long e) const;

 private:
  std::vector<Rational> coeff_;
};

struct FormulaResult {
  std::optional<Rational> exact;  // absent on the float-only path
  double value = 0.0;             // may underflow to 0 for extreme exponents
  double log10_abs = 0.0;         // scale survives underflow; -inf when value is 0
  int sign = 0;
  bool float_fallback = false;    // exact arithmetic skipped (dimension too large)
};

// Dimension of the section space: curve N*degL - g + 1, projective space
// binomial(N+m, m). Throws when the curve bundle fails N*degL > 2g-2.
long long h0_dimension(const RingSpec& spec, long long big_n);

// Integral of c(M)(1 - N c1(L)) wedge (N c1(L) u^2 + (1-u^2))^n over M, with
// the power truncated to the ring and n = h0 - 1. u = cos(rho) in [0, 1].
FormulaResult ring_eval_expected_chi(const RingSpec& spec, long long big_n, const Rational& u);

// Closed-form curve evaluation:
//   (1-u^2)^{n-1} [ (N degL)^2 u^2 - N degL (g u^2 + 1 - u^2) + (2-2g)(1-u^2) ]
// with n = N degL - g.
FormulaResult expected_chi_curve(int genus, int deg_l, long long big_n, const Rational& u);

// Tube volume of the embedded curve in CP^n at radius rho = arccos(u).
// FormulaResult.exact carries V / (pi^n / n!), the volume in units of
// Vol(CP^n), which is rational in u^2; FormulaResult.value is the absolute
// volume.
FormulaResult tube_volume_curve(int genus, int deg_l, long long big_n, const Rational& u);

// n^{m+1} (1-u^2)^{n-m} u^{2m}, evaluated in log space.
double leading_term(int m, long long n, double u);
FormulaResult leading_term_exact(int m, long long n, const Rational& u);

}  // namespace holex::chern
