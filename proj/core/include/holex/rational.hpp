#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace holex {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// Wide float used by the non-exact formula path; huge exponent range, so
// quantities like (1-u^2)^1000 stay representable.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Parses "3", "-0.25", "9/10" into an exact rational.
Rational parse_rational(const std::string& text);

// Exact dyadic rational of a finite double.
Rational rational_from_double(double x);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

// binomial(n, k) for 0 <= k, exact; returns 0 for k > n.
BigInt binomial(long long n, long long k);

}  // namespace holex
