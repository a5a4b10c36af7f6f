#pragma once

// Exact discrepancy oracles. All values are unnormalized: sup |A - N * volume|.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "generators.hpp"
#include "rational.hpp"

namespace qmc {

enum class DiscMethod { Oracle, Formula, ClosedForm1D };

inline const char* to_string(DiscMethod m) {
  switch (m) {
    case DiscMethod::Oracle: return "oracle";
    case DiscMethod::Formula: return "formula";
    case DiscMethod::ClosedForm1D: return "closed-form-1d";
  }
  return "?";
}

struct DiscReport {
  std::uint64_t N = 0;
  std::optional<Rational> dplus, dminus, dstar, dextreme;
  DiscMethod method = DiscMethod::Oracle;
};

/// A box prod [lower_j, upper_j).
struct Box {
  std::vector<Rational> lower, upper;
};

/// A(J) - N * lambda(J).
inline Rational local_delta(const std::vector<std::vector<Rational>>& P, const Box& J) {
  const std::size_t s = J.lower.size();
  if (J.upper.size() != s || s == 0) throw InvalidInput("local_delta: malformed box");
  Rational vol(1);
  for (std::size_t j = 0; j < s; ++j) {
    if (!(J.lower[j] < J.upper[j])) throw InvalidInput("local_delta: box needs lower < upper");
    if (J.lower[j] < Rational(0) || J.upper[j] > Rational(1)) throw InvalidInput("local_delta: box outside the unit cube");
    vol *= J.upper[j] - J.lower[j];
  }
  std::int64_t A = 0;
  for (const auto& p : P) {
    if (p.size() != s) throw InvalidInput("local_delta: point dimension mismatch");
    bool in = true;
    for (std::size_t j = 0; j < s && in; ++j) in = J.lower[j] <= p[j] && p[j] < J.upper[j];
    A += in;
  }
  return Rational(A) - Rational(static_cast<std::int64_t>(P.size())) * vol;
}

namespace detail {

/// D+, D-, D of a sorted list of points in [0,1]. Points equal to 1 never
/// lie in a subinterval of [0,1) but still count towards N.
inline DiscReport disc_1d_sorted(const std::vector<Rational>& xs) {
  if (xs.empty()) throw InvalidInput("disc_1d: empty point list");
  const std::int64_t N = static_cast<std::int64_t>(xs.size());
  std::size_t M = 0;
  while (M < xs.size() && xs[M] < Rational(1)) ++M;
  const Rational NR(N);
  Rational dplus(0), dminus(0);
  // Extreme discrepancy: best pair i <= j (plus) and i < j (minus) in one pass.
  Rational best_left_plus(0), ext_plus(0);
  Rational best_left_minus(0);  // sentinel x_{-1} = 0 at index -1
  Rational ext_minus(0);
  for (std::size_t k = 0; k <= M; ++k) {
    const std::int64_t ki = static_cast<std::int64_t>(k);
    const Rational xk = k < M ? xs[k] : Rational(1);
    const Rational nx = NR * xk;
    // Minus candidates: [a, x_k) with a just above x_i (or a = 0).
    ext_minus = max(ext_minus, nx - Rational(ki) + best_left_minus);
    if (k == M) {
      dminus = max(dminus, nx - Rational(ki));
      break;
    }
    dminus = max(dminus, nx - Rational(ki));
    dplus = max(dplus, Rational(ki + 1) - nx);
    // Plus candidates: [x_i, x_k] closed on the right, i <= k.
    best_left_plus = k == 0 ? nx - Rational(ki) : max(best_left_plus, nx - Rational(ki));
    ext_plus = max(ext_plus, Rational(ki + 1) - nx + best_left_plus);
    best_left_minus = max(best_left_minus, Rational(ki + 1) - nx);
  }
  DiscReport r;
  r.N = static_cast<std::uint64_t>(N);
  r.dplus = dplus;
  r.dminus = dminus;
  r.dstar = max(dplus, dminus);
  r.dextreme = max(ext_plus, ext_minus);
  r.method = DiscMethod::Oracle;
  return r;
}

}  // namespace detail

/// Exact D+, D-, D*, D of a finite one-dimensional multiset in [0,1].
inline DiscReport disc_1d(std::vector<Rational> xs) {
  for (const auto& x : xs)
    if (x < Rational(0) || x > Rational(1)) throw InvalidInput("disc_1d: point outside [0,1]");
  std::sort(xs.begin(), xs.end());
  return detail::disc_1d_sorted(xs);
}

inline DiscReport disc_1d(const std::vector<BaseRational>& xs) {
  std::vector<Rational> v;
  v.reserve(xs.size());
  for (const auto& x : xs) v.push_back(x.value());
  return disc_1d(std::move(v));
}

/// Incrementally grown 1D prefix: add points one at a time, query the
/// discrepancies of the current prefix in O(N).
class Prefix1D {
 public:
  void add(const Rational& x) {
    if (x < Rational(0) || x > Rational(1)) throw InvalidInput("Prefix1D: point outside [0,1]");
    sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), x), x);
  }
  std::size_t size() const { return sorted_.size(); }
  DiscReport report() const { return detail::disc_1d_sorted(sorted_); }

 private:
  std::vector<Rational> sorted_;
};

/// 1/2 + N max_n |x_(n) - (2n+1)/(2N)| over the sorted points.
inline Rational star_disc_1d_sorted(std::vector<Rational> xs) {
  if (xs.empty()) throw InvalidInput("star_disc_1d_sorted: empty point list");
  std::sort(xs.begin(), xs.end());
  const std::int64_t N = static_cast<std::int64_t>(xs.size());
  Rational best(0);
  for (std::int64_t n = 0; n < N; ++n) best = max(best, abs(xs[n] - Rational(2 * n + 1, 2 * N)));
  return Rational(1, 2) + Rational(N) * best;
}

namespace detail {

/// Star discrepancy sweep over integer points (X/qx, Y/qy).
///
/// D* = max of  count(x<=a, y<=b) - N a b   over coordinates a, b < 1
///         and  N a b - count(x<a, y<b)     over coordinates a, b or 1.
/// Levels in y are processed in increasing order. The active points (y at or
/// below the current level) live in blocks of slots sorted by X; each block
/// keeps the hulls of (X, local rank) so one query costs O(#blocks) amortized.
template <class Int>
class StarSweep {
 public:
  StarSweep(const GridPointSet& g) : g_(g) {}

  Int run() {
    const std::size_t N = g_.points.size();
    const Int S = Int(g_.qx) * Int(g_.qy);
    const Int NN = Int(static_cast<std::int64_t>(N));
    order_.resize(N);
    for (std::size_t i = 0; i < N; ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      return g_.points[a].first < g_.points[b].first;
    });
    slot_of_.assign(N, 0);
    for (std::size_t s = 0; s < N; ++s) slot_of_[order_[s]] = s;
    B_ = std::max<std::size_t>(8, static_cast<std::size_t>(std::sqrt(2.0 * static_cast<double>(N))));
    nblocks_ = (N + B_ - 1) / B_;
    active_.assign(N, false);
    blocks_.assign(nblocks_, Block{});
    S_ = S;

    std::vector<std::size_t> by_y(N);
    for (std::size_t i = 0; i < N; ++i) by_y[i] = i;
    std::sort(by_y.begin(), by_y.end(), [&](std::size_t a, std::size_t b) {
      return g_.points[a].second < g_.points[b].second;
    });

    Int best = 0;
    // b = smallest level (or 1 if there are no points), nothing active yet.
    {
      std::int64_t v1 = N ? g_.points[by_y[0]].second : g_.qy;
      best = std::max(best, query_minus(NN * Int(v1)));
    }
    std::size_t i = 0;
    while (i < N) {
      const std::int64_t v = g_.points[by_y[i]].second;
      while (i < N && g_.points[by_y[i]].second == v) insert(slot_of_[by_y[i++]]);
      if (v < g_.qy) best = std::max(best, query_plus(NN * Int(v)));
      if (v < g_.qy) {
        std::int64_t next = i < N ? g_.points[by_y[i]].second : g_.qy;
        best = std::max(best, query_minus(NN * Int(next)));
      }
    }
    return best;
  }

 private:
  struct Block {
    std::size_t active = 0;
    std::size_t active_below_one = 0;
    // Hull vertices as (X, local rank); ranks are 1-based.
    std::vector<std::pair<std::int64_t, std::int64_t>> upper, lower;
    std::size_t up_ptr = 0, lo_ptr = 0;
  };

  static i128 cross(const std::pair<std::int64_t, std::int64_t>& o, const std::pair<std::int64_t, std::int64_t>& a,
                    const std::pair<std::int64_t, std::int64_t>& b) {
    return i128(a.first - o.first) * (b.second - o.second) - i128(a.second - o.second) * (b.first - o.first);
  }

  void insert(std::size_t slot) {
    active_[slot] = true;
    rebuild(slot / B_);
  }

  void rebuild(std::size_t bi) {
    Block& bl = blocks_[bi];
    bl.upper.clear();
    bl.lower.clear();
    bl.active = 0;
    bl.active_below_one = 0;
    const std::size_t lo = bi * B_, hi = std::min(order_.size(), lo + B_);
    for (std::size_t s = lo; s < hi; ++s) {
      if (!active_[s]) continue;
      const std::int64_t X = g_.points[order_[s]].first;
      const std::int64_t r = static_cast<std::int64_t>(++bl.active);
      std::pair<std::int64_t, std::int64_t> p{X, r};
      if (X < g_.qx) {
        ++bl.active_below_one;
        // Upper hull for the plus side; among equal X keep the largest rank.
        while (!bl.upper.empty() && bl.upper.back().first == X) bl.upper.pop_back();
        while (bl.upper.size() >= 2 && cross(bl.upper[bl.upper.size() - 2], bl.upper.back(), p) >= 0) bl.upper.pop_back();
        bl.upper.push_back(p);
      }
      // Lower hull for the minus side; among equal X keep the smallest rank.
      if (!bl.lower.empty() && bl.lower.back().first == X) continue;
      while (bl.lower.size() >= 2 && cross(bl.lower[bl.lower.size() - 2], bl.lower.back(), p) <= 0) bl.lower.pop_back();
      bl.lower.push_back(p);
    }
    bl.up_ptr = bl.upper.empty() ? 0 : bl.upper.size() - 1;
    bl.lo_ptr = 0;
  }

  // max over active X < qx of (rank * S - w * X), rank = #active with X' <= X.
  Int query_plus(Int w) {
    Int best = 0;
    Int prefix = 0;
    for (auto& bl : blocks_) {
      if (bl.active == 0) continue;
      if (!bl.upper.empty()) {
        auto f = [&](const std::pair<std::int64_t, std::int64_t>& p) { return Int(p.second) * S_ - w * Int(p.first); };
        // w only grows between rebuilds, so the optimum moves left.
        while (bl.up_ptr > 0 && f(bl.upper[bl.up_ptr - 1]) >= f(bl.upper[bl.up_ptr])) --bl.up_ptr;
        best = std::max(best, prefix * S_ + f(bl.upper[bl.up_ptr]));
      }
      prefix += Int(static_cast<std::int64_t>(bl.active));
    }
    return best;
  }

  // max of (w * X - rank * S), rank = #active with X' < X, over active X and X = qx.
  Int query_minus(Int w) {
    Int best = 0;
    Int prefix = 0, below_one = 0;
    for (auto& bl : blocks_) {
      if (bl.active == 0) continue;
      auto f = [&](const std::pair<std::int64_t, std::int64_t>& p) { return w * Int(p.first) - Int(p.second - 1) * S_; };
      // w only grows, so the optimum moves right.
      while (bl.lo_ptr + 1 < bl.lower.size() && f(bl.lower[bl.lo_ptr + 1]) >= f(bl.lower[bl.lo_ptr])) ++bl.lo_ptr;
      best = std::max(best, f(bl.lower[bl.lo_ptr]) - prefix * S_);
      prefix += Int(static_cast<std::int64_t>(bl.active));
      below_one += Int(static_cast<std::int64_t>(bl.active_below_one));
    }
    best = std::max(best, w * Int(g_.qx) - below_one * S_);
    return best;
  }

  const GridPointSet& g_;
  std::vector<std::size_t> order_, slot_of_;
  std::vector<bool> active_;
  std::vector<Block> blocks_;
  std::size_t B_ = 8, nblocks_ = 0;
  Int S_ = 1;
};

}  // namespace detail

/// Exact two-dimensional star discrepancy of points in [0,1]^2.
inline Rational star_disc_2d(const GridPointSet& g) {
  if (g.points.empty()) throw InvalidInput("star_disc_2d: empty point set");
  for (const auto& [X, Y] : g.points)
    if (X < 0 || X > g.qx || Y < 0 || Y > g.qy) throw InvalidInput("star_disc_2d: point outside [0,1]^2");
  const i128 N = static_cast<i128>(g.points.size());
  const i128 bound = N * g.qx * g.qy;
  if (bound < (i128(1) << 61)) {
    std::int64_t v = detail::StarSweep<std::int64_t>(g).run();
    return Rational::from_i128(v, i128(g.qx) * g.qy);
  }
  i128 v = detail::StarSweep<i128>(g).run();
  return Rational::from_i128(v, i128(g.qx) * g.qy);
}

inline Rational star_disc_2d(const PointSet2D& P) { return star_disc_2d(to_grid(P)); }

inline Rational star_disc_2d(const std::vector<std::pair<Rational, Rational>>& P) { return star_disc_2d(to_grid(P)); }

/// Critical-grid oracle in O(N^3): plus corners at point coordinates below 1,
/// minus corners at point coordinates or 1. Used to cross-check the sweep.
inline Rational star_disc_2d_bruteforce(const std::vector<std::pair<Rational, Rational>>& P) {
  if (P.empty()) throw InvalidInput("star_disc_2d: empty point set");
  const Rational N(static_cast<std::int64_t>(P.size()));
  std::vector<Rational> xs{Rational(1)}, ys{Rational(1)};
  for (const auto& [x, y] : P) {
    xs.push_back(x);
    ys.push_back(y);
  }
  Rational best(0);
  for (const auto& a : xs)
    for (const auto& b : ys) {
      std::int64_t closed = 0, open = 0;
      for (const auto& [x, y] : P) {
        closed += (x <= a && y <= b);
        open += (x < a && y < b);
      }
      if (a < Rational(1) && b < Rational(1)) best = max(best, Rational(closed) - N * a * b);
      best = max(best, N * a * b - Rational(open));
    }
  return best;
}

struct RothResult {
  Rational max_prefix;
  Rational net_dstar;
  bool ok = false;
};

/// max_{M<=N} D*(M,S) <= D*(P) <= max_{M<=N} D*(M,S) + 1 with P = {(x_n, n/N)}.
inline RothResult roth_sandwich(const std::vector<Rational>& seq_prefix) {
  if (seq_prefix.empty()) throw InvalidInput("roth_sandwich: N must be >= 1");
  const std::int64_t N = static_cast<std::int64_t>(seq_prefix.size());
  Prefix1D pre;
  Rational mp(0);
  std::vector<std::pair<Rational, Rational>> P;
  for (std::int64_t n = 0; n < N; ++n) {
    pre.add(seq_prefix[n]);
    mp = max(mp, *pre.report().dstar);
    P.emplace_back(seq_prefix[n], Rational(n, N));
  }
  RothResult r{mp, star_disc_2d(P), false};
  r.ok = r.max_prefix <= r.net_dstar && r.net_dstar <= r.max_prefix + Rational(1);
  return r;
}

inline RothResult roth_sandwich(const Sequence& S, std::uint64_t N) { return roth_sandwich(S.exact_prefix_1d(N)); }

}  // namespace qmc
