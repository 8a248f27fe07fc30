#pragma once

#include <algorithm>
#include <cctype>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tvar/error.hpp"

namespace tvar {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using LatticeVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return denom(r) == 1; }

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floor(const Rat& r) { return floor_div(numer(r), denom(r)); }
inline Int ceil(const Rat& r) { return -floor(Rat(-r)); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline int sign(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

inline std::string to_string(const Int& i) { return i.str(); }

inline std::string to_string(const Rat& r) {
  if (is_integer(r)) return numer(r).str();
  return numer(r).str() + "/" + denom(r).str();
}

namespace detail {

inline bool parse_int_token(std::string_view s, Int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  out = Int(std::string(s[0] == '+' ? s.substr(1) : s));
  return true;
}

}  // namespace detail

/// Parses "p", "p/q" (q != 0). Surrounding whitespace is not accepted.
inline Rat parse_rat(std::string_view s) {
  auto slash = s.find('/');
  Int p, q = 1;
  bool ok = slash == std::string_view::npos
                ? detail::parse_int_token(s, p)
                : detail::parse_int_token(s.substr(0, slash), p) &&
                      detail::parse_int_token(s.substr(slash + 1), q);
  if (!ok) throw Error(ErrorKind::Parse, "malformed rational '" + std::string(s) + "'");
  if (q == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
  return Rat(p, q);
}

// ---- vectors -------------------------------------------------------------

inline RatVec to_rat(const LatticeVec& v) { return RatVec(v.begin(), v.end()); }

inline void require_same_length(std::size_t a, std::size_t b, const char* where) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                std::string(where) + ": lengths " + std::to_string(a) + " and " + std::to_string(b));
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  require_same_length(a.size(), b.size(), "dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const LatticeVec& a, const RatVec& b) {
  require_same_length(a.size(), b.size(), "dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const RatVec& a, const LatticeVec& b) { return dot(b, a); }

inline Int dot(const LatticeVec& a, const LatticeVec& b) {
  require_same_length(a.size(), b.size(), "dot");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  require_same_length(a.size(), b.size(), "add");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
  require_same_length(a.size(), b.size(), "sub");
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec operator*(const Rat& s, const RatVec& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline LatticeVec operator+(const LatticeVec& a, const LatticeVec& b) {
  require_same_length(a.size(), b.size(), "add");
  LatticeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline LatticeVec operator*(const Int& s, const LatticeVec& a) {
  LatticeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline LatticeVec operator-(const LatticeVec& a) {
  LatticeVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline bool is_zero(const LatticeVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

/// Primitive integer vector on the ray Q>=0 * v. Zero maps to zero.
inline LatticeVec primitive(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, denom(x));
  LatticeVec out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = numer(v[i]) * (l / denom(v[i]));
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline LatticeVec primitive(const LatticeVec& v) { return primitive(to_rat(v)); }

/// Lowest common denominator of a vector's entries.
inline Int common_denominator(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, denom(x));
  return l;
}

template <class T>
std::string to_string(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace tvar
