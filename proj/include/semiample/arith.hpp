#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace semiample {

using Integer = mpz_class;
using Rational = mpq_class;
using LatticeVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

std::string to_string(const Integer& x);
// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& x);
// Accepts "p", "p/q", "-p/q". Throws ValidationError.
Rational parse_rational(const std::string& s);

Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

bool is_integral(const RationalVector& v);
LatticeVector to_lattice(const RationalVector& v);  // throws if not integral
RationalVector to_rational(const LatticeVector& v);
// Least common multiple of the denominators.
Integer common_denominator(const RationalVector& v);

long to_long(const Integer& x);  // throws ValidationError when out of range

}  // namespace semiample
