#include "holex/rational.hpp"

#include "holex/common.hpp"

#include <cmath>
#include <cstddef>

namespace holex {

namespace {

// Digit-wise base-10 parse. BigInt's own string constructor treats a
// leading zero as an octal prefix, which silently corrupts literals such
// as "-0.25" once the decimal point is spliced out.
BigInt parse_digits(const std::string& body, const std::string& original) {
  std::size_t start = 0;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    start = 1;
  }
  if (start == body.size()) throw ValidationError("malformed rational literal: " + original);
  BigInt value = 0;
  for (std::size_t i = start; i < body.size(); ++i) {
    const char c = body[i];
    if (c < '0' || c > '9') throw ValidationError("malformed rational literal: " + original);
    value = value * 10 + (c - '0');
  }
  if (negative) value = -value;
  return value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt num = parse_digits(text.substr(0, slash), text);
    const BigInt den = parse_digits(text.substr(slash + 1), text);
    if (den == 0) throw ValidationError("rational literal with zero denominator: " + text);
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_digits(text, text));
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  BigInt den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(parse_digits(digits, text), den);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value cannot become a rational");
  return Rational(x);
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

}  // namespace holex
