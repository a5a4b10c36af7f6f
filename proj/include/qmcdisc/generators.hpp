#pragma once

// Point sets and sequences: generalized van der Corput, NUT (0,1)-sequences,
// digital nets over Z_p, generalized Hammersley nets and the special
// sequences used by the bound checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corebase.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace qmc {

/// A b-adic expansion: explicit head digits, then (optionally) the digit
/// `tail` repeated forever. Without a tail only the head is known.
struct DigitExpansion {
  unsigned base = 2;
  std::vector<Digit> head;
  std::optional<Digit> tail;

  /// Exact real value; the tail d from position K adds d * b^-K / (b-1).
  Rational value() const {
    if (!tail) throw InvalidInput("DigitExpansion: exact value needs an eventually constant expansion");
    Rational v = BaseRational(base, head).value();
    if (*tail) v += Rational(*tail, ipow(base, static_cast<unsigned>(head.size())) * (base - 1));
    return v;
  }

  /// [x]_{b,m}: the first m digits of this expansion.
  BaseRational truncated(std::size_t m) const {
    if (m > head.size() && !tail) throw InvalidInput("DigitExpansion: expansion shorter than requested precision");
    return truncate([this](std::size_t i) { return i < head.size() ? head[i] : *tail; }, base, m);
  }
};

/// max(ceil(log_b n_max), m) + 8 guard digits.
inline std::size_t default_precision(unsigned b, std::uint64_t n_max, std::size_t m = 0) {
  return std::max<std::size_t>(ceil_log(n_max, b), m) + 8;
}

/// X_b^{Sigma,C}(n) digit by digit: digit r = sigma_r(n_r) + sum_{k>r} c_r^k n_k.
/// With an eventually constant Sigma the digits from max(len(n), tail start)
/// on are all sigma_tail(0); otherwise `min_len` digits are produced.
inline DigitExpansion nut_expansion(const PermSeq& sigma, const GenMatrix& C, std::uint64_t n,
                                    std::size_t min_len = 0) {
  const unsigned b = sigma.base();
  if (C.base() != b) throw InvalidInput("nut: base mismatch between Sigma and C");
  if (C.kind() != GenMatrix::Kind::StrictUpper) throw InvalidInput("nut: C must be strict upper triangular");
  const std::size_t len = digit_count(n, b);
  const std::vector<Digit> nd = digits(n, b, len);
  auto tail = sigma.constant_tail();
  DigitExpansion e{b, {}, std::nullopt};
  std::size_t K = tail ? std::max(len, tail->first) : std::max(len, min_len);
  e.head.resize(K);
  for (std::size_t r = 0; r < K; ++r) {
    Digit nr = r < len ? nd[r] : 0;
    e.head[r] = (sigma.sigma_at(r)(nr) + C.upper_dot(r, nd)) % b;
  }
  if (tail) e.tail = tail->second(0);
  return e;
}

inline DigitExpansion gvdc_expansion(const PermSeq& sigma, std::uint64_t n, std::size_t min_len = 0) {
  return nut_expansion(sigma, GenMatrix::zero(sigma.base()), n, min_len);
}

/// m-truncation of S_b^Sigma(n).
inline BaseRational gvdc_point(const PermSeq& sigma, std::uint64_t n, std::size_t precision) {
  return gvdc_expansion(sigma, n, precision).truncated(precision);
}

/// m-truncation of X_b^{Sigma,C}(n).
inline BaseRational nut_point(const PermSeq& sigma, const GenMatrix& C, std::uint64_t n, std::size_t precision) {
  return nut_expansion(sigma, C, n, precision).truncated(precision);
}

/// Exact value of X_b^{Sigma,C}(n) (may equal 1 when every digit is b-1).
inline Rational nut_exact(const PermSeq& sigma, const GenMatrix& C, std::uint64_t n) {
  return nut_expansion(sigma, C, n).value();
}

/// One point of the digital net generated by C_1..C_s over Z_p.
inline std::vector<BaseRational> digital_point(const std::vector<ModMatrix>& Cs, std::uint64_t n, std::size_t m) {
  if (Cs.empty()) throw InvalidInput("digital_point: no generating matrices");
  const unsigned p = Cs.front().modulus();
  require_prime(p);
  std::vector<Digit> nd = digits(n, p, m);
  std::vector<BaseRational> out;
  out.reserve(Cs.size());
  for (const auto& C : Cs) {
    if (C.rows() != m || C.cols() != m || C.modulus() != p) throw InvalidInput("digital_point: matrix shape or modulus mismatch");
    out.emplace_back(p, C.apply(nd));
  }
  return out;
}

/// A finite two-dimensional point multiset.
struct PointSet2D {
  unsigned base = 2;
  std::size_t m = 0;
  std::vector<std::pair<BaseRational, BaseRational>> points;
  std::string label;
};

/// Points with integer coordinates over fixed denominators: (X/qx, Y/qy),
/// 0 <= X <= qx, 0 <= Y <= qy. The fast path for discrepancy sweeps.
struct GridPointSet {
  std::int64_t qx = 1, qy = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
};

inline GridPointSet to_grid(const PointSet2D& P) {
  std::size_t px = 0, py = 0;
  for (const auto& [x, y] : P.points) {
    px = std::max(px, x.stripped_length());
    py = std::max(py, y.stripped_length());
  }
  GridPointSet g;
  g.qx = ipow(P.base, static_cast<unsigned>(px));
  g.qy = ipow(P.base, static_cast<unsigned>(py));
  g.points.reserve(P.points.size());
  for (const auto& [x, y] : P.points) g.points.emplace_back(x.scaled(px).first, y.scaled(py).first);
  return g;
}

/// Exact rational points mapped to a common grid (coordinates in [0, 1]).
inline GridPointSet to_grid(const std::vector<std::pair<Rational, Rational>>& pts) {
  GridPointSet g;
  i128 qx = 1, qy = 1;
  for (const auto& [x, y] : pts) {
    qx = qx / detail::gcd128(qx, x.den()) * x.den();
    qy = qy / detail::gcd128(qy, y.den()) * y.den();
    if (qx > (i128(1) << 62) || qy > (i128(1) << 62)) throw std::overflow_error("to_grid: common denominator too large");
  }
  g.qx = static_cast<std::int64_t>(qx);
  g.qy = static_cast<std::int64_t>(qy);
  for (const auto& [x, y] : pts) {
    if (x < Rational(0) || x > Rational(1) || y < Rational(0) || y > Rational(1))
      throw InvalidInput("to_grid: coordinate outside [0,1]");
    g.points.emplace_back(x.num() * (g.qx / x.den()), y.num() * (g.qy / y.den()));
  }
  return g;
}

inline void require_perm_vector(unsigned b, std::size_t m, const std::vector<Perm>& sigmas) {
  if (sigmas.size() != m) throw InvalidInput("hammersley: need exactly m permutations");
  for (const auto& s : sigmas)
    if (s.base() != b) throw InvalidInput("hammersley: permutation base mismatch");
}

/// H_{b,m}^sigma = {(S_b^sigma(n), n / b^m) : 0 <= n < b^m}.
inline PointSet2D hammersley(unsigned b, std::size_t m, const std::vector<Perm>& sigmas) {
  require_base(b);
  require_perm_vector(b, m, sigmas);
  PointSet2D P{b, m, {}, "hammersley"};
  const std::uint64_t N = static_cast<std::uint64_t>(ipow(b, static_cast<unsigned>(m)));
  P.points.reserve(N);
  for (std::uint64_t n = 0; n < N; ++n) {
    std::vector<Digit> d = digits(n, b, m), x(m), y(m);
    for (std::size_t r = 0; r < m; ++r) {
      x[r] = sigmas[r](d[r]);
      y[r] = d[m - 1 - r];
    }
    P.points.emplace_back(BaseRational(b, std::move(x)), BaseRational(b, std::move(y)));
  }
  return P;
}

/// Same net as hammersley(), directly as integer numerators over b^m.
inline GridPointSet hammersley_grid(unsigned b, std::size_t m, const std::vector<Perm>& sigmas) {
  require_base(b);
  require_perm_vector(b, m, sigmas);
  const std::int64_t N = ipow(b, static_cast<unsigned>(m));
  GridPointSet g{N, N, {}};
  g.points.reserve(static_cast<std::size_t>(N));
  for (std::int64_t n = 0; n < N; ++n) {
    std::int64_t x = 0, rest = n;
    for (std::size_t r = 0; r < m; ++r) {
      x = x * b + sigmas[r](static_cast<Digit>(rest % b));
      rest /= b;
    }
    g.points.emplace_back(x, n);
  }
  return g;
}

/// Digital net over Z_p as integer numerators over p^m.
inline GridPointSet digital_grid(const ModMatrix& C1, const ModMatrix& C2) {
  const unsigned p = C1.modulus();
  const std::size_t m = C1.rows();
  if (C1.cols() != m || C2.rows() != m || C2.cols() != m || C2.modulus() != p)
    throw InvalidInput("digital_grid: matrix shape or modulus mismatch");
  const std::int64_t N = ipow(p, static_cast<unsigned>(m));
  GridPointSet g{N, N, {}};
  g.points.reserve(static_cast<std::size_t>(N));
  std::vector<Digit> d(m);
  for (std::int64_t n = 0; n < N; ++n) {
    std::int64_t rest = n;
    for (std::size_t k = 0; k < m; ++k) {
      d[k] = static_cast<Digit>(rest % p);
      rest /= p;
    }
    std::int64_t X = 0, Y = 0;
    for (std::size_t r = 0; r < m; ++r) {
      std::uint64_t sx = 0, sy = 0;
      for (std::size_t k = 0; k < m; ++k) {
        sx += static_cast<std::uint64_t>(C1(r, k)) * d[k];
        sy += static_cast<std::uint64_t>(C2(r, k)) * d[k];
      }
      X = X * p + static_cast<std::int64_t>(sx % p);
      Y = Y * p + static_cast<std::int64_t>(sy % p);
    }
    g.points.emplace_back(X, Y);
  }
  return g;
}

enum class SwapKind { IdTau, Alternating, SigmaSigmaBar };

/// Permutation vectors of the swapped Hammersley nets. IdTau and
/// SigmaSigmaBar put floor(m/2) copies of the first permutation before
/// ceil(m/2) copies of the second; Alternating is (id, tau, ..., id, tau).
inline std::vector<Perm> swap_vector(SwapKind kind, std::size_t m, const Perm& sigma) {
  if (m < 1) throw InvalidInput("swap_vector: m must be >= 1");
  const unsigned b = sigma.base();
  const Perm id = Perm::identity(b), tau = Perm::swap(b);
  std::vector<Perm> out;
  switch (kind) {
    case SwapKind::IdTau:
    case SwapKind::SigmaSigmaBar: {
      Perm first = kind == SwapKind::IdTau ? id : sigma;
      Perm second = kind == SwapKind::IdTau ? tau : compose(tau, sigma);
      out.assign(m / 2, first);
      out.insert(out.end(), m - m / 2, second);
      break;
    }
    case SwapKind::Alternating:
      if (m % 2) throw InvalidInput("swap_vector: the alternating vector needs even m");
      for (std::size_t i = 0; i < m; ++i) out.push_back(i % 2 ? tau : id);
      break;
  }
  return out;
}

/// An indexed sequence of points in [0,1]^dim given by digit expansions.
struct Sequence {
  unsigned base = 2;
  unsigned dim = 1;
  std::string label;
  /// Expansions of point n; heads hold at least `min_len` digits when no tail exists.
  std::function<std::vector<DigitExpansion>(std::uint64_t n, std::size_t min_len)> expand;

  std::vector<BaseRational> point(std::uint64_t n, std::size_t precision) const {
    std::vector<BaseRational> out;
    for (const auto& e : expand(n, precision)) out.push_back(e.truncated(precision));
    return out;
  }
  std::vector<Rational> exact(std::uint64_t n) const {
    std::vector<Rational> out;
    for (const auto& e : expand(n, 0)) out.push_back(e.value());
    return out;
  }
  /// First coordinate of the first N points, exact.
  std::vector<Rational> exact_prefix_1d(std::uint64_t N) const {
    std::vector<Rational> out;
    out.reserve(N);
    for (std::uint64_t n = 0; n < N; ++n) out.push_back(exact(n)[0]);
    return out;
  }
};

inline Sequence gvdc_sequence(PermSeq sigma) {
  unsigned b = sigma.base();
  std::string label = "gvdc[" + sigma.str() + "]";
  return {b, 1, label, [sigma = std::move(sigma)](std::uint64_t n, std::size_t min_len) {
            return std::vector<DigitExpansion>{gvdc_expansion(sigma, n, min_len)};
          }};
}

inline Sequence nut_sequence(PermSeq sigma, GenMatrix C) {
  unsigned b = sigma.base();
  std::string label = "nut[" + sigma.str() + "]";
  return {b, 1, label, [sigma = std::move(sigma), C = std::move(C)](std::uint64_t n, std::size_t min_len) {
            return std::vector<DigitExpansion>{nut_expansion(sigma, C, n, min_len)};
          }};
}

/// Z_b^{Pi,C}(n): digit r is pi_r(sum_{k>=r} c_r^k n_k mod b) for a NUT matrix C.
/// In strict mode every pi_r must be a linear scrambling f*i + g.
inline DigitExpansion scrambled_nut_expansion(const PermSeq& pi, const GenMatrix& C, std::uint64_t n,
                                              std::size_t min_len = 0, bool strict = true) {
  const unsigned b = pi.base();
  if (C.base() != b) throw InvalidInput("scrambled_nut: base mismatch");
  if (C.kind() != GenMatrix::Kind::NUT) throw InvalidInput("scrambled_nut: C must be a NUT matrix");
  const std::size_t len = digit_count(n, b);
  const std::vector<Digit> nd = digits(n, b, len);
  auto tail = pi.constant_tail();
  std::size_t K = tail ? std::max(len, tail->first) : std::max(len, min_len);
  DigitExpansion e{b, std::vector<Digit>(K), std::nullopt};
  for (std::size_t r = 0; r < K; ++r) {
    Perm p = pi.sigma_at(r);
    if (strict && !p.linear_form()) throw NotABijection("scrambled_nut: pi_" + std::to_string(r) + " is not linear");
    e.head[r] = p(C.row_dot(r, nd));
  }
  if (tail) {
    if (strict && !tail->second.linear_form()) throw NotABijection("scrambled_nut: tail permutation is not linear");
    e.tail = tail->second(0);
  }
  return e;
}

inline BaseRational scrambled_nut(const PermSeq& pi, const GenMatrix& C, std::uint64_t n, std::size_t precision,
                                  bool strict = true) {
  return scrambled_nut_expansion(pi, C, n, precision, strict).truncated(precision);
}

enum class SpecialKind { X2C0, XbIdTau, PascalDigital, AllOnes2, RepeatT };

struct SpecialParams {
  unsigned base = 2;
  unsigned dim = 2;        // PascalDigital: 1 (identity only) or 2
  unsigned t = 0;          // RepeatT
  const Sequence* inner = nullptr;  // RepeatT; copied into the result
};

inline std::optional<SpecialKind> parse_special_kind(std::string_view s) {
  if (s == "X2C0") return SpecialKind::X2C0;
  if (s == "XbIdTau") return SpecialKind::XbIdTau;
  if (s == "PascalDigital") return SpecialKind::PascalDigital;
  if (s == "AllOnes2") return SpecialKind::AllOnes2;
  if (s == "RepeatT") return SpecialKind::RepeatT;
  return std::nullopt;
}

namespace detail {

/// Finite digits of a digital coordinate y_r = sum_{k>=r} c(r,k) n_k mod b.
template <class Entry>
DigitExpansion upper_digital(unsigned b, std::uint64_t n, Entry&& c) {
  const std::size_t len = digit_count(n, b);
  const std::vector<Digit> nd = digits(n, b, len);
  DigitExpansion e{b, std::vector<Digit>(len, 0), Digit{0}};
  for (std::size_t r = 0; r < len; ++r) {
    std::uint64_t s = 0;
    for (std::size_t k = r; k < len; ++k) s += static_cast<std::uint64_t>(c(r, k)) * nd[k];
    e.head[r] = static_cast<Digit>(s % b);
  }
  return e;
}

/// binom(k, r) mod p via Lucas' theorem.
inline Digit binom_mod(std::uint64_t k, std::uint64_t r, unsigned p) {
  std::uint64_t res = 1;
  while (k || r) {
    std::uint64_t kd = k % p, rd = r % p;
    if (rd > kd) return 0;
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < rd; ++i) c = c * (kd - i) / (i + 1);
    res = res * (c % p) % p;
    k /= p;
    r /= p;
  }
  return static_cast<Digit>(res);
}

}  // namespace detail

/// The named sequences of the bound checks.
///  X2C0: base-2 matrix with ones on the diagonal and in the first column,
///        so digit r is n_r + n_0 for every r >= 1 (an infinite tail n_0).
///  XbIdTau: x_{bk} = S^id(bk), x_{bk+1} = S^tau(bk), x_{bk+l} = S^id(bk+l-1).
///  PascalDigital: (phi_p(n), Pascal-matrix coordinate) over prime p.
///  AllOnes2: base-2 NUT matrix with every upper entry equal to 1.
///  RepeatT: each point of `inner` repeated b^t times consecutively.
inline Sequence special_sequence(SpecialKind kind, const SpecialParams& prm) {
  const unsigned b = prm.base;
  switch (kind) {
    case SpecialKind::X2C0:
      return {2, 1, "X2C0", [](std::uint64_t n, std::size_t) {
                const std::size_t len = digit_count(n, 2);
                std::vector<Digit> nd = digits(n, 2, len);
                Digit n0 = n & 1;
                DigitExpansion e{2, std::vector<Digit>(len, 0), n0};
                for (std::size_t r = 0; r < len; ++r) e.head[r] = r == 0 ? n0 : (nd[r] ^ n0);
                return std::vector<DigitExpansion>{e};
              }};
    case SpecialKind::XbIdTau: {
      require_base(b);
      if (b < 3) throw InvalidInput("XbIdTau needs b >= 3");
      PermSeq id = PermSeq::constant(Perm::identity(b)), tau = PermSeq::constant(Perm::swap(b));
      return {b, 1, "XbIdTau", [b, id, tau](std::uint64_t n, std::size_t) {
                std::uint64_t k = n / b, l = n % b;
                if (l == 0) return std::vector<DigitExpansion>{gvdc_expansion(id, b * k)};
                if (l == 1) return std::vector<DigitExpansion>{gvdc_expansion(tau, b * k)};
                return std::vector<DigitExpansion>{gvdc_expansion(id, b * k + l - 1)};
              }};
    }
    case SpecialKind::PascalDigital: {
      require_prime(b);
      if (prm.dim < 1 || prm.dim > 2) throw InvalidInput("PascalDigital supports dim 1 or 2");
      unsigned dim = prm.dim;
      return {b, dim, "PascalDigital", [b, dim](std::uint64_t n, std::size_t) {
                std::vector<DigitExpansion> out;
                out.push_back(detail::upper_digital(b, n, [](std::size_t r, std::size_t k) { return Digit(r == k); }));
                if (dim == 2)
                  out.push_back(detail::upper_digital(b, n, [b](std::size_t r, std::size_t k) {
                    return detail::binom_mod(k, r, b);
                  }));
                return out;
              }};
    }
    case SpecialKind::AllOnes2:
      return {2, 1, "AllOnes2", [](std::uint64_t n, std::size_t) {
                return std::vector<DigitExpansion>{
                    detail::upper_digital(2, n, [](std::size_t, std::size_t) { return Digit{1}; })};
              }};
    case SpecialKind::RepeatT: {
      if (!prm.inner) throw InvalidInput("RepeatT needs an inner sequence");
      Sequence inner = *prm.inner;
      std::uint64_t rep = static_cast<std::uint64_t>(ipow(inner.base, prm.t));
      return {inner.base, inner.dim, "RepeatT[" + inner.label + "]",
              [inner, rep](std::uint64_t n, std::size_t min_len) { return inner.expand(n / rep, min_len); }};
    }
  }
  throw InvalidInput("special_sequence: unknown kind");
}

}  // namespace qmc
