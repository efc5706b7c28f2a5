#pragma once

#include <gmpxx.h>

#include <string>

#include "traceinv/errors.hpp"

namespace traceinv {

// All coefficients in the library are exact rationals; no floating point.
using Rat = mpq_class;
using Int = mpz_class;

// Prints "num/den", omitting "/den" when the denominator is 1.
inline std::string rat_to_string(const Rat& value) {
  Rat v(value);
  v.canonicalize();
  return v.get_str();
}

inline Rat rat_from_string(const std::string& text) {
  Rat v;
  if (v.set_str(text, 10) != 0) throw parse_error("bad rational literal: '" + text + "'");
  if (v.get_den() == 0) throw parse_error("zero denominator: '" + text + "'");
  v.canonicalize();
  return v;
}

inline bool is_integer(const Rat& v) { return v.get_den() == 1; }

// gmpxx has no long long overloads; funnel machine integers through here.
inline Rat make_rat(long long num, long long den = 1) {
  Rat r(Int(static_cast<long>(num)), Int(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

// Exact conversion; throws if the value is not a machine-size integer.
inline long long rat_to_ll(const Rat& v) {
  if (!is_integer(v)) throw domain_error("expected integer, got " + rat_to_string(v));
  if (!v.get_num().fits_slong_p()) throw domain_error("integer out of machine range");
  return v.get_num().get_si();
}

inline Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace traceinv
