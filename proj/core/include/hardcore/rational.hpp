#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace hardcore {

using Rational = mpq_class;
using BigInt = mpz_class;

// Scalar traits let measures, kernels and the transport solver run either in
// doubles or in exact GMP rationals.
template <class P>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double from_ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static constexpr bool exact = false;
};

template <>
struct ScalarTraits<Rational> {
  static Rational from_ratio(std::int64_t num, std::int64_t den) {
    Rational r(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
    r.canonicalize();
    return r;
  }
  static double to_double(const Rational& x) { return x.get_d(); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static constexpr bool exact = true;
};

template <class P>
double to_double(const P& x) {
  return ScalarTraits<P>::to_double(x);
}

inline Rational rational_from_double(double x) {
  Rational r(x);
  r.canonicalize();
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// log2 of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& x) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace hardcore
