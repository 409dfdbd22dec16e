#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace k3sym {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Canonical "p/q" rendering; "/q" suppressed for integers.
inline std::string rat_str(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

inline bool rat_is_int(const Rat& r) { return rat_den(r) == 1; }

inline Int rat_to_int(const Rat& r) {
  if (!rat_is_int(r)) throw std::domain_error("rat_to_int: " + rat_str(r) + " is not an integer");
  return rat_num(r);
}

// Parses "p", "-p", "p/q"; whitespace not accepted.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_rat: cannot parse '" + s + "'");
  }
}

}  // namespace k3sym
