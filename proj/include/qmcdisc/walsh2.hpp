#pragma once

// Local discrepancy of digital (0,m,2)-nets over Z_2 (first matrix the
// identity) via Walsh analysis, and the lower-bound witness for nets whose
// second matrix has a nonsingular upper-left floor(m/2) x floor(m/2) block.

#include <cstdint>
#include <optional>
#include <vector>

#include "discrepancy.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "matrix.hpp"
#include "netverify.hpp"
#include "rational.hpp"

namespace qmc {

/// An m-bit number x = sum_{i=1}^m x_i 2^-i stored as the integer x * 2^m.
struct MBit {
  std::uint64_t value = 0;
  /// x_i for 1 <= i <= m; x_{m+1} = 0.
  unsigned bit(std::size_t i, std::size_t m) const { return i >= 1 && i <= m ? (value >> (m - i)) & 1u : 0u; }
  Rational as_rational(std::size_t m) const { return Rational(static_cast<std::int64_t>(value), std::int64_t{1} << m); }
};

/// Digital (0,m,2)-net over Z_2 generated by (I, C2).
class Net2Base2 {
 public:
  explicit Net2Base2(ModMatrix C2) : C2_(std::move(C2)), m_(C2_.rows()) {
    if (C2_.modulus() != 2 || C2_.rows() != C2_.cols() || m_ < 1 || m_ > 30)
      throw InvalidInput("Net2Base2: C2 must be a square matrix over Z_2 with 1 <= m <= 30");
    if (!digital_rank_check({ModMatrix::identity(m_, 2), C2_}, m_, 0))
      throw InvalidInput("Net2Base2: (I, C2) is not a digital (0,m,2)-net");
    corner_inv_.resize(m_);
    for (std::size_t u = 1; u < m_; ++u) {
      // C2'(u) = (M_u^T)^{-1}, M_u = rows 1..u, columns m-u+1..m of C2.
      auto inv = C2_.block(0, m_ - u, u, u).transposed().inverse();
      if (!inv) throw InvalidInput("Net2Base2: singular corner matrix");
      corner_inv_[u] = *inv;
    }
  }

  std::size_t m() const { return m_; }
  const ModMatrix& C2() const { return C2_; }
  const ModMatrix& corner_inverse(std::size_t u) const { return corner_inv_.at(u); }

  /// Points as integer numerators over 2^m: x = phi_2(n), y = C2 * digits(n).
  GridPointSet points() const {
    const std::int64_t N = std::int64_t{1} << m_;
    GridPointSet g{N, N, {}};
    for (std::int64_t n = 0; n < N; ++n) {
      std::vector<Digit> d = digits(static_cast<std::uint64_t>(n), 2, m_);
      std::vector<Digit> y = C2_.apply(d);
      std::int64_t X = 0, Y = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        X = 2 * X + d[i];
        Y = 2 * Y + y[i];
      }
      g.points.emplace_back(X, Y);
    }
    return g;
  }

 private:
  ModMatrix C2_;
  std::size_t m_;
  std::vector<ModMatrix> corner_inv_;
};

/// Direct count A([0,eta) x [0,beta)) - 2^m eta beta.
inline Rational local_delta_direct(const GridPointSet& g, std::uint64_t eta_num, std::uint64_t beta_num, std::size_t m) {
  std::int64_t A = 0;
  for (const auto& [X, Y] : g.points) A += (static_cast<std::uint64_t>(X) < eta_num && static_cast<std::uint64_t>(Y) < beta_num);
  return Rational(A) - Rational(static_cast<std::int64_t>(eta_num * beta_num), std::int64_t{1} << m);
}

/// ||x||: distance to the nearest integer.
inline Rational nearest_int_distance(const Rational& x) {
  Rational f = x.frac();
  return min(f, Rational(1) - f);
}

/// Unnormalized local discrepancy Delta(eta, beta) = A - 2^m eta beta from the Walsh series.
inline Rational local_delta_walsh(const Net2Base2& net, MBit eta, MBit beta) {
  const std::size_t m = net.m();
  const ModMatrix& C = net.C2();
  std::vector<Digit> e(m), bb(m);
  for (std::size_t i = 0; i < m; ++i) {
    e[i] = eta.bit(i + 1, m);
    bb[i] = beta.bit(i + 1, m);
  }
  std::vector<Digit> gamma = C.apply(e);
  for (std::size_t i = 0; i < m; ++i) gamma[i] ^= bb[i];
  const Rational beta_r = beta.as_rational(m);
  Rational total(0);
  for (std::size_t u = 0; u < m; ++u) {
    unsigned s1 = 0;
    for (std::size_t k = 0; k < m; ++k) s1 ^= C(u, k) & e[k];
    unsigned s2 = 0;
    std::size_t mu = 0;
    if (u > 0) {
      const ModMatrix& Cp = net.corner_inverse(u);
      for (std::size_t r = 0; r < u; ++r) {
        unsigned w = 0;
        for (std::size_t l = 0; l < u; ++l) w ^= Cp(r, l) & C(u, m - u + l);
        s2 ^= gamma[r] & w;
      }
      // m(u): number of leading zeros of i -> (gamma(u) | C2'(u) e_i).
      while (mu < u) {
        unsigned ip = 0;
        for (std::size_t r = 0; r < u; ++r) ip ^= gamma[r] & Cp(r, mu);
        if (ip) break;
        ++mu;
      }
    }
    const std::size_t ju = u - mu;
    const int a = eta.bit(m - u, m) ? -1 : 1;
    const int c = eta.bit(m + 1 - ju, m) ? -1 : 1;
    if (a == c) continue;
    const Rational nb = nearest_int_distance(beta_r * Rational(std::int64_t{1} << u));
    const int sign = ((s1 ^ s2) & 1) ? -1 : 1;
    total += nb * Rational(sign * (a - c) / 2);
  }
  return total;
}

/// Digital (0,m,2)-net over Z_2 with C1 = I and C2 = (A B; C D), A nonsingular floor(m/2) x floor(m/2).
class BlockNet {
 public:
  explicit BlockNet(ModMatrix C2) : net_(std::move(C2)), m0_(net_.m() / 2) {
    if (m0_ > 0 && !net_.C2().block(0, 0, m0_, m0_).inverse())
      throw InvalidInput("BlockNet: upper-left block A is singular");
  }

  std::size_t m() const { return net_.m(); }
  std::size_t m0() const { return m0_; }
  const Net2Base2& net() const { return net_; }
  ModMatrix A() const { return net_.C2().block(0, 0, m0_, m0_); }
  ModMatrix B() const { return net_.C2().block(0, m0_, m0_, m() - m0_); }

 private:
  Net2Base2 net_;
  std::size_t m0_;
};

struct Witness {
  MBit eta, beta;
  Rational value;  // |Delta(eta, beta)|
};

/// The explicit box of the lower-bound proof: beta0 = (1,0,1,0,...) on the
/// first m0 bits; eta0 solves C2 eta0 = delta on the first m0 rows with
/// delta_{u+1} = beta0_{u+1}, delta_{m-u} = delta_{u+1} xor 1 (u < m0) and
/// the remaining components of delta zero.
inline Witness thmnew_witness(const BlockNet& bn) {
  const std::size_t m = bn.m(), m0 = bn.m0();
  std::vector<Digit> beta(m, 0), delta(m, 0), eta(m, 0);
  for (std::size_t i = 0; i < m0; ++i) beta[i] = (i % 2 == 0);
  for (std::size_t u = 0; u < m0; ++u) {
    delta[u] = beta[u];
    delta[m - 1 - u] = beta[u] ^ 1;
  }
  for (std::size_t i = m0; i < m; ++i) eta[i] = delta[i];
  const ModMatrix& C = bn.net().C2();
  if (m0 > 0) {
    auto Ainv = bn.A().inverse();
    if (!Ainv) throw InvalidInput("thmnew_witness: A is singular");
    std::vector<Digit> rhs(m0);
    for (std::size_t i = 0; i < m0; ++i) {
      unsigned s = delta[i];
      for (std::size_t k = m0; k < m; ++k) s ^= C(i, k) & eta[k];
      rhs[i] = s;
    }
    std::vector<Digit> head = Ainv->apply(rhs);
    for (std::size_t i = 0; i < m0; ++i) eta[i] = head[i];
  }
  MBit E, Bt;
  for (std::size_t i = 0; i < m; ++i) {
    E.value = 2 * E.value + eta[i];
    Bt.value = 2 * Bt.value + beta[i];
  }
  return {E, Bt, abs(local_delta_walsh(bn.net(), E, Bt))};
}

/// The witness value as printed for even m0: m0/6 + (4/9)(2^-m0 - 1).
/// For odd m0 the printed form is m0/6 + (1/9)(2^-m0 - 1).
inline Rational thmnew_closed_form(std::size_t m0) {
  const Rational p(1, std::int64_t{1} << m0);
  return Rational(static_cast<std::int64_t>(m0), 6) + Rational(m0 % 2 == 0 ? 4 : 1, 9) * (p - Rational(1));
}

/// The witness value sum over odd u < m0 of ||2^u beta0||, in closed form:
/// m0/6 + (4/9)(2^-m0 - 1) for even m0, m0/6 + (2/9) 2^-m0 - 5/18 for odd m0.
inline Rational thmnew_witness_value(std::size_t m0) {
  const Rational p(1, std::int64_t{1} << m0);
  if (m0 % 2 == 0) return thmnew_closed_form(m0);
  return Rational(static_cast<std::int64_t>(m0), 6) + Rational(2, 9) * p - Rational(5, 18);
}

inline const Rational kThmNewConstant(-49, 36);

struct ThmNewResult {
  Rational dstar, witness, bound;
  bool pass = false;
};

/// D*(P) >= witness >= m/12 - 49/36.
inline ThmNewResult verify_thmnew(const BlockNet& bn) {
  Witness w = thmnew_witness(bn);
  ThmNewResult r{star_disc_2d(bn.net().points()), w.value,
                 Rational(static_cast<std::int64_t>(bn.m()), 12) + kThmNewConstant, false};
  r.pass = r.dstar >= r.witness && r.witness >= r.bound;
  return r;
}

}  // namespace qmc
