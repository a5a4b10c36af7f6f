#pragma once

// (t,m,s)-net checks by elementary-interval counting, the digital rank
// condition, and (t,s)-sequence prefix checks.

#include <cstdint>
#include <functional>
#include <vector>

#include "corebase.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "matrix.hpp"

namespace qmc {

/// Calls f(d) for every d in N^s with sum d_j = total, in lexicographic
/// order; stops early when f returns false. Returns false if stopped.
inline bool for_each_composition(std::size_t s, std::size_t total, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> d(s, 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) -> bool {
    if (j + 1 == s) {
      d[j] = left;
      return f(d);
    }
    for (std::size_t v = 0; v <= left; ++v) {
      d[j] = v;
      if (!rec(j + 1, left - v)) return false;
    }
    return true;
  };
  if (s == 0) return f(d);
  return rec(0, total);
}

/// Per point and axis, floor(x * b^res): the elementary cell at resolution res.
using CellIndex = std::vector<std::vector<std::uint64_t>>;

inline CellIndex cell_index(const std::vector<std::vector<BaseRational>>& P, unsigned b, std::size_t res) {
  CellIndex idx;
  idx.reserve(P.size());
  for (const auto& pt : P) {
    std::vector<std::uint64_t> row;
    for (const auto& x : pt) {
      if (x.base() != b) throw InvalidInput("is_net: coordinate base mismatch");
      row.push_back(x.leading(res));
    }
    idx.push_back(std::move(row));
  }
  return idx;
}

/// Exhaustive check of the (t,m,s)-net property on precomputed cells at resolution res >= m - t.
inline bool is_net_cells(const CellIndex& cells, std::size_t res, unsigned b, std::size_t m, std::size_t s, std::size_t t) {
  const std::uint64_t N = static_cast<std::uint64_t>(ipow(b, static_cast<unsigned>(m)));
  if (cells.size() != N) throw InvalidInput("is_net: expected b^m points");
  if (t > m) throw InvalidInput("is_net: t must be <= m");
  const std::uint64_t per = static_cast<std::uint64_t>(ipow(b, static_cast<unsigned>(t)));
  const std::size_t k = m - t;
  std::vector<std::uint64_t> count(static_cast<std::size_t>(ipow(b, static_cast<unsigned>(k))));
  std::vector<std::uint64_t> shift(k + 1);
  for (std::size_t d = 0; d <= k; ++d) shift[d] = static_cast<std::uint64_t>(ipow(b, static_cast<unsigned>(res - d)));
  return for_each_composition(s, k, [&](const std::vector<std::size_t>& d) {
    std::fill(count.begin(), count.end(), 0);
    for (const auto& c : cells) {
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < s; ++j) key = key * ipow(b, static_cast<unsigned>(d[j])) + c[j] / shift[d[j]];
      if (++count[key] > per) return false;
    }
    return true;
  });
}

/// Definition check: every elementary interval of volume b^{t-m} holds exactly b^t points.
inline bool is_net(const std::vector<std::vector<BaseRational>>& P, unsigned b, std::size_t m, std::size_t s, std::size_t t) {
  for (const auto& pt : P)
    if (pt.size() != s) throw InvalidInput("is_net: point dimension mismatch");
  if (t > m) throw InvalidInput("is_net: t must be <= m");
  return is_net_cells(cell_index(P, b, m - t), m - t, b, m, s, t);
}

inline std::vector<std::vector<BaseRational>> as_points(const PointSet2D& P) {
  std::vector<std::vector<BaseRational>> out;
  out.reserve(P.points.size());
  for (const auto& [x, y] : P.points) out.push_back({x, y});
  return out;
}

inline bool is_net(const PointSet2D& P, std::size_t t) { return is_net(as_points(P), P.base, P.m, 2, t); }

/// Smallest t for which is_net holds.
inline std::size_t minimal_t(const std::vector<std::vector<BaseRational>>& P, unsigned b, std::size_t m, std::size_t s) {
  CellIndex cells = cell_index(P, b, m);
  for (std::size_t t = 0; t < m; ++t)
    if (is_net_cells(cells, m, b, m, s, t)) return t;
  return m;
}

inline std::size_t minimal_t(const PointSet2D& P) { return minimal_t(as_points(P), P.base, P.m, 2); }

/// Digital criterion: for all d with sum d_j = m - t the first d_j rows of the
/// C_j are linearly independent over Z_p.
inline bool digital_rank_check(const std::vector<ModMatrix>& Cs, std::size_t m, std::size_t t) {
  if (Cs.empty()) throw InvalidInput("digital_rank_check: no matrices");
  const unsigned p = Cs.front().modulus();
  require_prime(p);
  if (t > m) throw InvalidInput("digital_rank_check: t must be <= m");
  for (const auto& C : Cs)
    if (C.rows() != m || C.cols() != m || C.modulus() != p) throw InvalidInput("digital_rank_check: shape mismatch");
  const std::size_t k = m - t;
  if (k == 0) return true;
  return for_each_composition(Cs.size(), k, [&](const std::vector<std::size_t>& d) {
    ModMatrix S(k, m, p);
    std::size_t row = 0;
    for (std::size_t j = 0; j < Cs.size(); ++j)
      for (std::size_t r = 0; r < d[j]; ++r, ++row)
        for (std::size_t c = 0; c < m; ++c) S(row, c) = Cs[j](r, c);
    return S.rank() == k;
  });
}

/// Smallest t passing digital_rank_check.
inline std::size_t digital_minimal_t(const std::vector<ModMatrix>& Cs, std::size_t m) {
  for (std::size_t t = 0; t < m; ++t)
    if (digital_rank_check(Cs, m, t)) return t;
  return m;
}

/// (t,s)-sequence in the broad sense, checked on aligned blocks:
/// for t < m <= m_max and 0 <= l <= l_max the m-truncated block
/// {x_n : l b^m <= n < (l+1) b^m} is a (t,m,s)-net.
inline bool check_sequence_prefix(const Sequence& S, unsigned b, std::size_t s, std::size_t t, std::size_t m_max,
                                  std::size_t l_max) {
  if (S.base != b || S.dim != s) throw InvalidInput("check_sequence_prefix: sequence base/dimension mismatch");
  if (m_max <= t) throw InvalidInput("check_sequence_prefix: m_max must exceed t");
  for (std::size_t m = t + 1; m <= m_max; ++m) {
    const std::uint64_t N = static_cast<std::uint64_t>(ipow(b, static_cast<unsigned>(m)));
    for (std::uint64_t l = 0; l <= l_max; ++l) {
      std::vector<std::vector<BaseRational>> block;
      block.reserve(N);
      for (std::uint64_t n = l * N; n < (l + 1) * N; ++n) block.push_back(S.point(n, m));
      if (!is_net(block, b, m, s, t)) return false;
    }
  }
  return true;
}

}  // namespace qmc
