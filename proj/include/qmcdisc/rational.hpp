#pragma once

// Exact rational numbers over checked 64-bit integers.
//
// Every intermediate product is formed in 128 bits and reduced before it is
// narrowed back; a result that does not fit throws std::overflow_error rather
// than wrapping. The desk-scale computations in this library stay far below
// that limit (denominators are small multiples of b^m with b^m < 2^40).

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmc {

using i128 = __int128;
using u128 = unsigned __int128;

namespace detail {

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("qmc::Rational: value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit from integers
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  /// Builds n/d from 128-bit parts, reducing before narrowing.
  static Rational from_i128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("qmc::Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow(n);
    r.den_ = detail::narrow(d);
    return r;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  /// Largest integer <= *this.
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0)) --q;
    return q;
  }
  /// *this - floor(*this), in [0, 1).
  Rational frac() const { return from_i128(num_ - static_cast<i128>(floor()) * den_, den_); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q" with q > 0, always including the denominator.
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Parses "p/q" or an integer literal "p".
  static Rational parse(std::string_view s) {
    auto trim = [](std::string_view v) {
      while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
      while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
      return v;
    };
    s = trim(s);
    auto to_i64 = [](std::string_view v) {
      if (v.empty()) throw std::invalid_argument("qmc::Rational: empty number");
      std::size_t pos = 0;
      long long x = std::stoll(std::string(v), &pos);
      if (pos != v.size()) throw std::invalid_argument("qmc::Rational: bad number '" + std::string(v) + "'");
      return static_cast<std::int64_t>(x);
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(to_i64(s));
    return Rational(to_i64(trim(s.substr(0, slash))), to_i64(trim(s.substr(slash + 1))));
  }

  Rational operator-() const {
    if (num_ == std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("qmc::Rational: negation overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_i128(static_cast<i128>(a.num_) + b.num_, a.den_);
    return from_i128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                     static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_i128(static_cast<i128>(a.num_) - b.num_, a.den_);
    return from_i128(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                     static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("qmc::Rational: division by zero");
    return from_i128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void assign(std::int64_t n, std::int64_t d) { *this = from_i128(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

/// b^e as a 64-bit integer; throws on overflow.
inline std::int64_t ipow(std::int64_t b, unsigned e) {
  i128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= b;
    if (r > std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("qmc::ipow: power exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace qmc
