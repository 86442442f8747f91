#ifndef AMPLE_RATIONAL_HPP
#define AMPLE_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace ample {

/// Exact rational scalar used everywhere a measure, coefficient or LP
/// multiplier appears. No floating point enters the library.
using Rational = boost::multiprecision::mpq_rational;

inline Rational rational(long num, long den = 1) { return Rational(num) / Rational(den); }

inline std::string numerator_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str();
}
inline std::string denominator_string(const Rational& r) {
  return boost::multiprecision::denominator(r).str();
}

inline std::string to_string(const Rational& r) {
  auto den = denominator_string(r);
  return den == "1" ? numerator_string(r) : numerator_string(r) + "/" + den;
}

}  // namespace ample

#endif
