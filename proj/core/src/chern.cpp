#include "holex/chern.hpp"

#include "holex/common.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace holex::chern {
namespace {

// Beyond this section-space dimension the exact rational path is skipped and
// only the wide-float evaluation is reported.
constexpr long long kExactDimensionLimit = 20000;

void fill_result_scale(FormulaResult& r, const Rational& exact) {
  if (exact == 0) {
    r.value = 0.0;
    r.sign = 0;
    r.log10_abs = -std::numeric_limits<double>::infinity();
    return;
  }
  const BigFloat wide(exact);
  r.value = wide.convert_to<double>();
  r.sign = exact > 0 ? 1 : -1;
  r.log10_abs = boost::multiprecision::log10(boost::multiprecision::abs(wide)).convert_to<double>();
}

void validate_u(const Rational& u) {
  if (u < 0 || u > 1) throw ValidationError("threshold cosine u must lie in [0, 1]");
}

Rational rational_pow(const Rational& base, long long e) {
  if (e < 0) throw ValidationError("negative exponent in exact power");
  if (e == 0) return Rational(1);
  if (base == 0) return Rational(0);
  Rational acc(1);
  Rational b = base;
  long long k = e;
  while (k > 0) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

// binomial(n, j) for small j, exact in n.
Rational falling_binomial(long long n, int j) {
  Rational acc(1);
  for (int i = 0; i < j; ++i) {
    acc *= Rational(n - i, i + 1);
  }
  return acc;
}

// Chern class coefficients of the manifold: c_k for k = 0..m, as classes.
std::vector<CohomologyClass> manifold_chern(const RingSpec& spec) {
  const int m = spec.kind == RingSpec::Kind::Curve ? 1 : spec.m;
  std::vector<CohomologyClass> c;
  c.reserve(m + 1);
  if (spec.kind == RingSpec::Kind::Curve) {
    c.push_back(CohomologyClass::scalar(1, Rational(1)));
    c.push_back(CohomologyClass::generator(1) * Rational(2 - 2 * spec.genus));
  } else {
    for (int k = 0; k <= m; ++k) {
      CohomologyClass hk = CohomologyClass::generator(m).pow(k);
      c.push_back(hk * Rational(binomial(m + 1, k)));
    }
  }
  return c;
}

}  // namespace

RingSpec RingSpec::curve(int genus, int deg_l) {
  RingSpec s;
  s.kind = Kind::Curve;
  s.genus = genus;
  s.deg_l = deg_l;
  s.m = 1;
  s.validate();
  return s;
}

RingSpec RingSpec::proj_space(int m) {
  RingSpec s;
  s.kind = Kind::ProjSpace;
  s.m = m;
  s.deg_l = 1;
  s.genus = 0;
  s.validate();
  return s;
}

void RingSpec::validate() const {
  if (kind == Kind::Curve) {
    if (genus < 0) throw ValidationError("curve genus must be >= 0");
    if (deg_l < 1) throw ValidationError("bundle degree must be >= 1");
  } else {
    if (m < 1) throw ValidationError("projective space dimension must be >= 1");
  }
}

CohomologyClass::CohomologyClass(int top_degree) {
  if (top_degree < 0) throw ValidationError("ring truncation degree must be >= 0");
  coeff_.assign(top_degree + 1, Rational(0));
}

CohomologyClass CohomologyClass::scalar(int top_degree, const Rational& value) {
  CohomologyClass c(top_degree);
  c.coeff_[0] = value;
  return c;
}

CohomologyClass CohomologyClass::generator(int top_degree) {
  CohomologyClass c(top_degree);
  if (top_degree >= 1) c.coeff_[1] = 1;
  return c;
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& other) const {
  CohomologyClass r = *this;
  for (int k = 0; k <= top_degree(); ++k) r.coeff_[k] += other.coeff_[k];
  return r;
}

CohomologyClass CohomologyClass::operator-(const CohomologyClass& other) const {
  CohomologyClass r = *this;
  for (int k = 0; k <= top_degree(); ++k) r.coeff_[k] -= other.coeff_[k];
  return r;
}

CohomologyClass CohomologyClass::operator*(const CohomologyClass& other) const {
  CohomologyClass r(top_degree());
  for (int i = 0; i <= top_degree(); ++i) {
    if (coeff_[i] == 0) continue;
    for (int j = 0; i + j <= top_degree(); ++j) {
      if (other.coeff_[j] == 0) continue;
      r.coeff_[i + j] += coeff_[i] * other.coeff_[j];
    }
  }
  return r;
}

CohomologyClass CohomologyClass::operator*(const Rational& scalar) const {
  CohomologyClass r = *this;
  for (auto& c : r.coeff_) c *= scalar;
  return r;
}

CohomologyClass CohomologyClass::pow(long long e) const {
  CohomologyClass acc = CohomologyClass::scalar(top_degree(), Rational(1));
  CohomologyClass b = *this;
  long long k = e;
  while (k > 0) {
    if (k & 1) acc = acc * b;
    b = b * b;
    k >>= 1;
  }
  return acc;
}

long long h0_dimension(const RingSpec& spec, long long big_n) {
  spec.validate();
  if (big_n < 1) throw ValidationError("tensor power N must be >= 1");
  if (spec.kind == RingSpec::Kind::Curve) {
    const long long deg = big_n * spec.deg_l;
    if (deg <= 2 * spec.genus - 2)
      throw ValidationError("bundle degree " + std::to_string(deg) +
                            " is not above 2g-2; section count is not genus-determined");
    return deg - spec.genus + 1;
  }
  const BigInt dim = binomial(big_n + spec.m, spec.m);
  if (dim > BigInt(std::numeric_limits<long long>::max()))
    throw ValidationError("section space dimension exceeds the supported integer range");
  return dim.convert_to<long long>();
}

FormulaResult ring_eval_expected_chi(const RingSpec& spec, long long big_n, const Rational& u) {
  spec.validate();
  validate_u(u);
  const long long n = h0_dimension(spec, big_n) - 1;
  const int m = spec.kind == RingSpec::Kind::Curve ? 1 : spec.m;
  if (n < 1) throw ValidationError("ambient projective dimension n must be >= 1");
  if (n < m) throw ValidationError("ambient dimension below manifold dimension");

  FormulaResult result;
  const Rational u2 = u * u;
  const Rational s2 = 1 - u2;
  const long long effective_deg = spec.kind == RingSpec::Kind::Curve ? spec.deg_l : 1;

  // Coefficient of H^{m-j} in c(M)(1 - N c1(L)) = sum_k c_k (1 - N c1L)^{m-k}.
  const CohomologyClass one_minus =
      CohomologyClass::scalar(m, Rational(1)) -
      CohomologyClass::generator(m) * Rational(big_n * effective_deg);
  const auto chern_coeffs = manifold_chern(spec);
  CohomologyClass front(m);
  for (int k = 0; k <= m; ++k) front = front + chern_coeffs[k] * one_minus.pow(m - k);

  // (N c1L u^2 + s^2)^n truncated: sum_j binom(n,j) (N degL u^2)^j s^{2(n-j)} H^j.
  auto eval_exact = [&]() -> Rational {
    Rational total(0);
    const Rational s2_tail = rational_pow(s2, n - m);
    const Rational a = Rational(big_n * effective_deg) * u2;
    for (int j = 0; j <= m; ++j) {
      const Rational& gamma = front.coeff(m - j);
      if (gamma == 0) continue;
      const Rational term = falling_binomial(n, j) * rational_pow(a, j) *
                            s2_tail * rational_pow(s2, m - j) * gamma;
      total += term;
    }
    return total;
  };

  if (n <= kExactDimensionLimit) {
    const Rational exact = eval_exact();
    result.exact = exact;
    fill_result_scale(result, exact);
    return result;
  }

  // Wide-float path for extreme dimensions.
  result.float_fallback = true;
  const BigFloat u2f(u2);
  const BigFloat s2f(s2);
  BigFloat total(0);
  const BigFloat s2_tail = s2 == 0 ? BigFloat(n == m ? 1 : 0)
                                   : boost::multiprecision::pow(s2f, static_cast<unsigned long long>(n - m));
  const BigFloat a = BigFloat(big_n) * BigFloat(effective_deg) * u2f;
  for (int j = 0; j <= m; ++j) {
    const Rational& gamma = front.coeff(m - j);
    if (gamma == 0) continue;
    BigFloat binom_nj(1);
    for (int i = 0; i < j; ++i) binom_nj *= BigFloat(n - i) / BigFloat(i + 1);
    total += binom_nj * boost::multiprecision::pow(a, j) * s2_tail *
             boost::multiprecision::pow(s2f, m - j) * BigFloat(gamma);
  }
  result.value = total.convert_to<double>();
  result.sign = total == 0 ? 0 : (total > 0 ? 1 : -1);
  result.log10_abs = total == 0 ? -std::numeric_limits<double>::infinity()
                                : boost::multiprecision::log10(boost::multiprecision::abs(total)).convert_to<double>();
  return result;
}

FormulaResult expected_chi_curve(int genus, int deg_l, long long big_n, const Rational& u) {
  const RingSpec spec = RingSpec::curve(genus, deg_l);
  validate_u(u);
  const long long n = h0_dimension(spec, big_n) - 1;
  if (n < 1) throw ValidationError("ambient projective dimension n must be >= 1");
  if (n > kExactDimensionLimit)
    throw ValidationError("curve closed form limited to dimensions manageable exactly");

  const Rational u2 = u * u;
  const Rational s2 = 1 - u2;
  const Rational d(big_n * deg_l);
  const Rational bracket =
      d * d * u2 - d * (Rational(genus) * u2 + s2) + Rational(2 - 2 * genus) * s2;
  const Rational exact = rational_pow(s2, n - 1) * bracket;

  FormulaResult result;
  result.exact = exact;
  fill_result_scale(result, exact);
  return result;
}

FormulaResult tube_volume_curve(int genus, int deg_l, long long big_n, const Rational& u) {
  const RingSpec spec = RingSpec::curve(genus, deg_l);
  validate_u(u);
  const long long n = h0_dimension(spec, big_n) - 1;
  if (n < 1) throw ValidationError("ambient projective dimension n must be >= 1");
  if (n > kExactDimensionLimit)
    throw ValidationError("tube volume limited to dimensions manageable exactly");

  const Rational u2 = u * u;
  const Rational s2 = 1 - u2;
  const Rational d(big_n * deg_l);
  const Rational chi_m(2 - 2 * genus);
  // V / (pi^n/n!) = s^{2n} (chi(M) - D) + n D s^{2(n-1)} u^2.
  const Rational normalized =
      rational_pow(s2, n) * (chi_m - d) + Rational(n) * d * rational_pow(s2, n - 1) * u2;

  FormulaResult result;
  result.exact = normalized;
  fill_result_scale(result, normalized);
  // Absolute volume: scale by Vol(CP^n) = pi^n / n!.
  BigFloat vol = boost::multiprecision::pow(boost::math::constants::pi<BigFloat>(),
                                            static_cast<int>(n));
  for (long long k = 2; k <= n; ++k) vol /= k;
  const BigFloat absolute = BigFloat(normalized) * vol;
  result.value = absolute.convert_to<double>();
  result.sign = normalized == 0 ? 0 : (normalized > 0 ? 1 : -1);
  result.log10_abs = normalized == 0
                         ? -std::numeric_limits<double>::infinity()
                         : boost::multiprecision::log10(boost::multiprecision::abs(absolute)).convert_to<double>();
  return result;
}

double leading_term(int m, long long n, double u) {
  if (m < 1 || n <= m) throw ValidationError("leading term needs n > m >= 1");
  if (u < 0.0 || u > 1.0) throw ValidationError("threshold cosine u must lie in [0, 1]");
  if (u == 0.0 || u == 1.0) return 0.0;
  const double log_value = (m + 1) * std::log(static_cast<double>(n)) +
                           (n - m) * std::log1p(-u * u) + 2.0 * m * std::log(u);
  return std::exp(log_value);
}

FormulaResult leading_term_exact(int m, long long n, const Rational& u) {
  if (m < 1 || n <= m) throw ValidationError("leading term needs n > m >= 1");
  validate_u(u);
  const Rational u2 = u * u;
  const Rational exact = rational_pow(Rational(n), m + 1) *
                         rational_pow(1 - u2, n - m) * rational_pow(u2, m);
  FormulaResult result;
  result.exact = exact;
  fill_result_scale(result, exact);
  return result;
}

}  // namespace holex::chern
