#pragma once

// Base-b digit arithmetic, permutations of Z_b and rule-based permutation
// sequences. Everything here is an immutable value type.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qmc {

using Digit = std::uint32_t;

inline void require_base(unsigned b) {
  if (b < 2) throw InvalidInput("base must be >= 2, got " + std::to_string(b));
}

/// Little-endian base-b digits of n, exactly `len` of them (n = sum n_k b^k).
inline std::vector<Digit> digits(std::uint64_t n, unsigned b, std::size_t len) {
  require_base(b);
  std::vector<Digit> out(len, 0);
  for (std::size_t k = 0; k < len; ++k) {
    out[k] = static_cast<Digit>(n % b);
    n /= b;
  }
  if (n != 0)
    throw DigitOverflow("digits: value does not fit in " + std::to_string(len) + " base-" +
                        std::to_string(b) + " digits");
  return out;
}

/// Number of base-b digits of n (0 for n == 0).
inline std::size_t digit_count(std::uint64_t n, unsigned b) {
  std::size_t c = 0;
  while (n != 0) {
    n /= b;
    ++c;
  }
  return c;
}

/// Smallest k with b^k >= n (k = 0 for n <= 1).
inline unsigned ceil_log(std::uint64_t n, unsigned b) {
  unsigned k = 0;
  u128 p = 1;
  while (p < n) {
    p *= b;
    ++k;
  }
  return k;
}

/// A finite b-adic fraction sum_i digits[i] * b^-(i+1) in [0, 1).
class BaseRational {
 public:
  BaseRational() = default;
  BaseRational(unsigned base, std::vector<Digit> digits) : base_(base), digits_(std::move(digits)) {
    require_base(base_);
    for (Digit d : digits_)
      if (d >= base_) throw InvalidInput("BaseRational: digit out of range");
  }

  unsigned base() const { return base_; }
  const std::vector<Digit>& digits() const { return digits_; }
  std::size_t precision() const { return digits_.size(); }

  /// Exact value; throws std::overflow_error when base^precision exceeds 64 bits.
  Rational value() const {
    auto [num, den] = scaled(stripped_length());
    return Rational(num, den);
  }

  /// Numerator over base^len (digits beyond len must be zero).
  std::pair<std::int64_t, std::int64_t> scaled(std::size_t len) const {
    if (stripped_length() > len) throw InvalidInput("BaseRational::scaled: precision too small");
    i128 num = 0;
    for (std::size_t i = 0; i < len; ++i) {
      num = num * base_ + (i < digits_.size() ? digits_[i] : 0);
      if (num > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("BaseRational: numerator exceeds 64 bits");
    }
    return {static_cast<std::int64_t>(num), ipow(base_, static_cast<unsigned>(len))};
  }

  /// First m digits (the m-truncation); shorter expansions are zero padded.
  BaseRational truncated(std::size_t m) const {
    std::vector<Digit> d(m, 0);
    std::copy_n(digits_.begin(), std::min(m, digits_.size()), d.begin());
    return BaseRational(base_, std::move(d));
  }

  /// Index of the base^-d interval containing the value: floor(x * base^d).
  std::uint64_t leading(std::size_t d) const {
    std::uint64_t a = 0;
    for (std::size_t i = 0; i < d; ++i) a = a * base_ + (i < digits_.size() ? digits_[i] : 0);
    return a;
  }

  std::size_t stripped_length() const {
    std::size_t n = digits_.size();
    while (n > 0 && digits_[n - 1] == 0) --n;
    return n;
  }

  friend bool operator==(const BaseRational& a, const BaseRational& b) {
    if (a.base_ != b.base_) return false;
    std::size_t n = a.stripped_length();
    return n == b.stripped_length() && std::equal(a.digits_.begin(), a.digits_.begin() + n, b.digits_.begin());
  }

  /// Digits of a rational whose reduced denominator is a power of `base`.
  static BaseRational from_rational(const Rational& x, unsigned base) {
    require_base(base);
    if (x < Rational(0) || x >= Rational(1)) throw InvalidInput("BaseRational: value outside [0,1)");
    std::vector<Digit> d;
    Rational r = x;
    std::size_t guard = 0;
    while (r != Rational(0)) {
      if (++guard > 128) throw InvalidInput("BaseRational: denominator is not a power of the base");
      r = r * Rational(base);
      std::int64_t q = r.floor();
      d.push_back(static_cast<Digit>(q));
      r = r - Rational(q);
    }
    return BaseRational(base, std::move(d));
  }

 private:
  unsigned base_ = 2;
  std::vector<Digit> digits_;
};

/// phi_b(n): digits of n mirrored about the radix point.
inline BaseRational radical_inverse(std::uint64_t n, unsigned b) {
  return BaseRational(b, digits(n, b, digit_count(n, b)));
}

/// [x]_{b,m} for a digit stream: stream(i) yields the coefficient of b^-(i+1).
template <class DigitStream>
BaseRational truncate(DigitStream&& stream, unsigned b, std::size_t m) {
  if (m < 1) throw InvalidInput("truncate: precision must be >= 1");
  std::vector<Digit> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = static_cast<Digit>(stream(i));
  return BaseRational(b, std::move(d));
}

/// A bijection of {0, ..., base-1}.
class Perm {
 public:
  Perm() : Perm(identity(2)) {}
  explicit Perm(std::vector<Digit> table) : table_(std::move(table)) {
    if (table_.size() < 2) throw InvalidInput("Perm: base must be >= 2");
    std::vector<bool> seen(table_.size(), false);
    for (Digit v : table_) {
      if (v >= table_.size() || seen[v]) throw NotABijection("Perm: table is not a bijection");
      seen[v] = true;
    }
  }

  static Perm identity(unsigned b) {
    require_base(b);
    std::vector<Digit> t(b);
    std::iota(t.begin(), t.end(), Digit{0});
    return Perm(std::move(t));
  }
  /// tau(i) = b - 1 - i.
  static Perm swap(unsigned b) {
    require_base(b);
    std::vector<Digit> t(b);
    for (unsigned i = 0; i < b; ++i) t[i] = b - 1 - i;
    return Perm(std::move(t));
  }
  /// i -> f*i + g mod b; requires gcd(f, b) == 1.
  static Perm linear(std::uint64_t f, std::uint64_t g, unsigned b) {
    require_base(b);
    if (f % b == 0 || std::gcd(f % b, std::uint64_t{b}) != 1)
      throw NotABijection("Perm::linear: gcd(f, b) must be 1");
    std::vector<Digit> t(b);
    for (unsigned i = 0; i < b; ++i) t[i] = static_cast<Digit>((f % b * i + g % b) % b);
    return Perm(std::move(t));
  }

  unsigned base() const { return static_cast<unsigned>(table_.size()); }
  const std::vector<Digit>& table() const { return table_; }
  Digit operator()(Digit i) const { return table_.at(i); }

  /// (sigma ⊎ t)(i) = sigma(i) + t mod b.
  Perm translated(std::uint64_t t) const {
    std::vector<Digit> out(table_);
    for (auto& v : out) v = static_cast<Digit>((v + t) % base());
    return Perm(std::move(out));
  }

  bool is_identity() const { return *this == identity(base()); }

  /// (f, g) with table[i] = f*i + g mod b, when such a pair exists.
  std::optional<std::pair<Digit, Digit>> linear_form() const {
    const unsigned b = base();
    Digit g = table_[0];
    Digit f = (table_[1] + b - g) % b;
    for (unsigned i = 0; i < b; ++i)
      if (table_[i] != (static_cast<std::uint64_t>(f) * i + g) % b) return std::nullopt;
    return std::make_pair(f, g);
  }

  /// "2,0,1".
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(table_[i]);
    }
    return s;
  }

  /// Accepts "2,0,1", or the shorthands "id" and "tau" (these need `base`).
  static Perm parse(std::string_view text, unsigned base = 0) {
    std::string s(text);
    if (s == "id" || s == "tau") {
      if (base < 2) throw InvalidInput("Perm::parse: '" + s + "' needs a base");
      return s == "id" ? identity(base) : swap(base);
    }
    std::vector<Digit> t;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw InvalidInput("Perm::parse: empty entry in '" + s + "'");
      std::size_t pos = 0;
      unsigned long v = std::stoul(item, &pos);
      if (pos != item.size()) throw InvalidInput("Perm::parse: bad entry '" + item + "'");
      t.push_back(static_cast<Digit>(v));
    }
    Perm p(std::move(t));
    if (base != 0 && p.base() != base)
      throw InvalidInput("Perm::parse: expected " + std::to_string(base) + " entries in '" + s + "'");
    return p;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.table_ <=> b.table_; }

 private:
  std::vector<Digit> table_;
};

inline Perm translate(const Perm& sigma, std::uint64_t t) { return sigma.translated(t); }

/// Function composition: (sigma ∘ pi)(i) = sigma(pi(i)).
inline Perm compose(const Perm& sigma, const Perm& pi) {
  if (sigma.base() != pi.base()) throw InvalidInput("compose: base mismatch");
  std::vector<Digit> t(sigma.base());
  for (unsigned i = 0; i < sigma.base(); ++i) t[i] = sigma(pi(i));
  return Perm(std::move(t));
}

/// r ∈ A = ∪_H {H(H-1), ..., H^2-1}.
inline bool in_faure_set(std::uint64_t r) {
  std::uint64_t q = std::uint64_t(std::sqrt(static_cast<long double>(r)));
  while (q * q > r) --q;
  while ((q + 1) * (q + 1) <= r) ++q;
  return r >= q * (q + 1);
}

/// Rule-based infinite sequence of permutations (sigma_r)_{r>=0}.
class PermSeq {
 public:
  struct Constant {
    Perm sigma;
  };
  struct ExplicitThenTail {
    std::vector<Perm> head;
    Perm tail;
  };
  /// sigma_r = sigma if r ∈ S, else tau∘sigma; membership bits cover r < horizon.
  struct SwapSet {
    Perm sigma;
    std::vector<bool> members;
    bool default_member = true;
  };
  /// sigma_r = sigma on Faure's set A, tau∘sigma elsewhere.
  struct FaureA {
    Perm sigma;
  };
  using Rule = std::variant<Constant, ExplicitThenTail, SwapSet, FaureA>;

  static constexpr std::size_t kDefaultHorizon = 64;

  explicit PermSeq(Rule rule) : rule_(std::move(rule)) { validate(); }

  static PermSeq constant(Perm sigma) { return PermSeq(Constant{std::move(sigma)}); }
  static PermSeq explicit_then_tail(std::vector<Perm> head, Perm tail) {
    return PermSeq(ExplicitThenTail{std::move(head), std::move(tail)});
  }
  static PermSeq swap_set(Perm sigma, std::vector<bool> members, bool default_member) {
    return PermSeq(SwapSet{std::move(sigma), std::move(members), default_member});
  }
  static PermSeq faure_a(Perm sigma) { return PermSeq(FaureA{std::move(sigma)}); }

  const Rule& rule() const { return rule_; }

  unsigned base() const {
    return std::visit(
        [](const auto& r) -> unsigned {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, ExplicitThenTail>) return r.tail.base();
          else return r.sigma.base();
        },
        rule_);
  }

  Perm sigma_at(std::uint64_t r) const {
    return std::visit(
        [r](const auto& rule) -> Perm {
          using T = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return rule.sigma;
          } else if constexpr (std::is_same_v<T, ExplicitThenTail>) {
            return r < rule.head.size() ? rule.head[r] : rule.tail;
          } else if constexpr (std::is_same_v<T, SwapSet>) {
            bool in = r < rule.members.size() ? bool(rule.members[r]) : rule.default_member;
            return in ? rule.sigma : compose(Perm::swap(rule.sigma.base()), rule.sigma);
          } else {
            return in_faure_set(r) ? rule.sigma : compose(Perm::swap(rule.sigma.base()), rule.sigma);
          }
        },
        rule_);
  }

  /// (start, sigma) with sigma_r = sigma for all r >= start, if the rule is
  /// eventually constant. FaureA never is.
  std::optional<std::pair<std::size_t, Perm>> constant_tail() const {
    return std::visit(
        [](const auto& rule) -> std::optional<std::pair<std::size_t, Perm>> {
          using T = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return std::make_pair(std::size_t{0}, rule.sigma);
          } else if constexpr (std::is_same_v<T, ExplicitThenTail>) {
            return std::make_pair(rule.head.size(), rule.tail);
          } else if constexpr (std::is_same_v<T, SwapSet>) {
            Perm s = rule.default_member ? rule.sigma : compose(Perm::swap(rule.sigma.base()), rule.sigma);
            return std::make_pair(rule.members.size(), s);
          } else {
            return std::nullopt;
          }
        },
        rule_);
  }

  /// Text form, e.g. "const:0,1", "list:1,0;0,1|tail:0,1",
  /// "swapset:0,1,2|bits:0110|default:1", "faurea:0,1,2".
  std::string str() const {
    return std::visit(
        [](const auto& rule) -> std::string {
          using T = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return "const:" + rule.sigma.str();
          } else if constexpr (std::is_same_v<T, ExplicitThenTail>) {
            std::string s = "list:";
            for (std::size_t i = 0; i < rule.head.size(); ++i) s += (i ? ";" : "") + rule.head[i].str();
            return s + "|tail:" + rule.tail.str();
          } else if constexpr (std::is_same_v<T, SwapSet>) {
            std::string bits;
            for (bool m : rule.members) bits += m ? '1' : '0';
            return "swapset:" + rule.sigma.str() + "|bits:" + bits + "|default:" + (rule.default_member ? "1" : "0");
          } else {
            return "faurea:" + rule.sigma.str();
          }
        },
        rule_);
  }

  /// Inverse of str(). Permutation fields also accept "id"/"tau" when `base` is given.
  static PermSeq parse(std::string_view text, unsigned base = 0) {
    std::string s(text);
    auto colon = s.find(':');
    if (colon == std::string::npos) throw InvalidInput("PermSeq::parse: missing rule name in '" + s + "'");
    std::string name = s.substr(0, colon);
    std::vector<std::string> fields;
    {
      std::stringstream ss(s.substr(colon + 1));
      std::string f;
      while (std::getline(ss, f, '|')) fields.push_back(f);
    }
    auto field = [&](std::string_view key) -> std::optional<std::string> {
      for (std::size_t i = 1; i < fields.size(); ++i)
        if (fields[i].rfind(std::string(key) + ":", 0) == 0) return fields[i].substr(key.size() + 1);
      return std::nullopt;
    };
    if (fields.empty()) throw InvalidInput("PermSeq::parse: missing parameters in '" + s + "'");
    if (name == "const") return constant(Perm::parse(fields[0], base));
    if (name == "faurea") return faure_a(Perm::parse(fields[0], base));
    if (name == "list") {
      auto tail = field("tail");
      if (!tail) throw InvalidInput("PermSeq::parse: list rule needs '|tail:'");
      Perm t = Perm::parse(*tail, base);
      std::vector<Perm> head;
      std::stringstream ss(fields[0]);
      std::string p;
      while (std::getline(ss, p, ';'))
        if (!p.empty()) head.push_back(Perm::parse(p, t.base()));
      return explicit_then_tail(std::move(head), std::move(t));
    }
    if (name == "swapset") {
      auto bits = field("bits");
      auto def = field("default");
      std::vector<bool> members;
      for (char c : bits.value_or("")) {
        if (c != '0' && c != '1') throw InvalidInput("PermSeq::parse: bits must be 0/1");
        members.push_back(c == '1');
      }
      bool d = def.value_or("1") == "1";
      return swap_set(Perm::parse(fields[0], base), std::move(members), d);
    }
    throw InvalidInput("PermSeq::parse: unknown rule '" + name + "'");
  }

 private:
  void validate() const {
    if (auto* e = std::get_if<ExplicitThenTail>(&rule_)) {
      for (const auto& p : e->head)
        if (p.base() != e->tail.base()) throw InvalidInput("PermSeq: mixed bases in explicit list");
    }
  }

  Rule rule_;
};

}  // namespace qmc
