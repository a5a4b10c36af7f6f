#pragma once

// Seeded sampling of permutations, matrices and nets. The output depends
// only on the seed (mt19937_64 is fully specified by the standard, and
// below() avoids the implementation-defined distributions).

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "corebase.hpp"
#include "matrix.hpp"

namespace qmc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform integer in [0, n), n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return x % n;
  }
  bool coin() { return below(2) == 1; }

  /// Independent child stream for a named sub-task.
  Rng fork(std::uint64_t salt) { return Rng(eng_() ^ (salt * 0x9E3779B97F4A7C15ull)); }

 private:
  std::mt19937_64 eng_;
};

inline Perm random_perm(Rng& rng, unsigned b) {
  std::vector<Digit> t(b);
  std::iota(t.begin(), t.end(), Digit{0});
  for (unsigned i = b - 1; i > 0; --i) std::swap(t[i], t[rng.below(i + 1)]);
  return Perm(std::move(t));
}

inline ModMatrix random_matrix(Rng& rng, std::size_t m, unsigned p) {
  ModMatrix M(m, m, p);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) M(r, c) = static_cast<Digit>(rng.below(p));
  return M;
}

/// C2 = L U J with L unit lower, U unit upper and J the column reversal:
/// together with C1 = I this is always a digital (0,m,2)-net.
inline ModMatrix random_zero_net_matrix(Rng& rng, std::size_t m, unsigned p) {
  ModMatrix L = ModMatrix::identity(m, p), U = ModMatrix::identity(m, p);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      if (c < r) L(r, c) = static_cast<Digit>(rng.below(p));
      if (c > r) U(r, c) = static_cast<Digit>(rng.below(p));
    }
  return L * U * ModMatrix::reversal(m, p);
}

/// Random (0,m,2)-net matrix over Z_2 whose upper-left floor(m/2) block is nonsingular.
inline ModMatrix random_block_net_matrix(Rng& rng, std::size_t m) {
  const std::size_t m0 = m / 2;
  for (;;) {
    ModMatrix C2 = random_zero_net_matrix(rng, m, 2);
    if (m0 == 0 || C2.block(0, 0, m0, m0).inverse()) return C2;
  }
}

/// Random strict upper triangular matrix with entries in rows/columns < size.
inline GenMatrix random_strict_upper(Rng& rng, unsigned b, std::size_t size) {
  GenMatrix C(GenMatrix::Kind::StrictUpper, b);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t k = r + 1; k < size; ++k)
      if (rng.below(5) < 2) C.set(r, k, static_cast<Digit>(rng.below(b)));
  return C;
}

/// Random eventually constant permutation sequence: up to max_head explicit
/// permutations followed by a constant tail.
inline PermSeq random_permseq(Rng& rng, unsigned b, std::size_t max_head = 4) {
  std::size_t h = rng.below(max_head + 1);
  std::vector<Perm> head;
  for (std::size_t i = 0; i < h; ++i) head.push_back(random_perm(rng, b));
  return PermSeq::explicit_then_tail(std::move(head), random_perm(rng, b));
}

}  // namespace qmc
