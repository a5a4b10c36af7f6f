#pragma once

// Matrices over Z_b: dense square matrices over a prime field (digital nets)
// and row-finite sparse generating matrices (NUT sequences).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corebase.hpp"
#include "errors.hpp"

namespace qmc {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(unsigned p) {
  if (!is_prime(p)) throw InvalidInput("base " + std::to_string(p) + " is not prime");
}

inline unsigned mod_inverse(unsigned a, unsigned p) {
  // p is small and prime: Fermat's little theorem.
  std::uint64_t r = 1, x = a % p;
  for (unsigned e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
  }
  return static_cast<unsigned>(r);
}

/// Dense rows x cols matrix over Z_p, p prime.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols, unsigned p) : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
    require_prime(p);
  }

  static ModMatrix identity(std::size_t m, unsigned p) {
    ModMatrix I(m, m, p);
    for (std::size_t i = 0; i < m; ++i) I(i, i) = 1;
    return I;
  }
  /// Anti-diagonal matrix J: (J v)_i = v_{m-1-i}.
  static ModMatrix reversal(std::size_t m, unsigned p) {
    ModMatrix J(m, m, p);
    for (std::size_t i = 0; i < m; ++i) J(i, m - 1 - i) = 1;
    return J;
  }
  /// Upper triangular Pascal matrix, entry (r, k) = binom(k, r) mod p.
  static ModMatrix pascal(std::size_t m, unsigned p) {
    ModMatrix P(m, m, p);
    for (std::size_t k = 0; k < m; ++k) {
      P(0, k) = 1;
      for (std::size_t r = 1; r <= k; ++r) P(r, k) = (P(r - 1, k - 1) + (r <= k - 1 ? P(r, k - 1) : 0)) % p;
    }
    return P;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned modulus() const { return p_; }

  Digit& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Digit operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<Digit> apply(const std::vector<Digit>& v) const {
    if (v.size() != cols_) throw InvalidInput("ModMatrix::apply: dimension mismatch");
    std::vector<Digit> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t s = 0;
      for (std::size_t c = 0; c < cols_; ++c) s += static_cast<std::uint64_t>((*this)(r, c)) * v[c];
      out[r] = static_cast<Digit>(s % p_);
    }
    return out;
  }

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
    if (a.cols_ != b.rows_ || a.p_ != b.p_) throw InvalidInput("ModMatrix: incompatible product");
    ModMatrix c(a.rows_, b.cols_, a.p_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        std::uint64_t x = a(i, k);
        if (!x) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<Digit>((c(i, j) + x * b(k, j)) % a.p_);
      }
    return c;
  }

  ModMatrix transposed() const {
    ModMatrix t(cols_, rows_, p_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  ModMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    ModMatrix b(nr, nc, p_);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  std::size_t rank() const {
    ModMatrix w = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t piv = rank;
      while (piv < rows_ && w(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      w.swap_rows(piv, rank);
      unsigned inv = mod_inverse(w(rank, c), p_);
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        if (!w(r, c)) continue;
        std::uint64_t f = static_cast<std::uint64_t>(w(r, c)) * inv % p_;
        for (std::size_t k = c; k < cols_; ++k)
          w(r, k) = static_cast<Digit>((w(r, k) + (p_ - f) * w(rank, k)) % p_);
      }
      ++rank;
    }
    return rank;
  }

  /// Inverse of a square matrix, or nullopt when singular.
  std::optional<ModMatrix> inverse() const {
    if (rows_ != cols_) throw InvalidInput("ModMatrix::inverse: not square");
    const std::size_t n = rows_;
    ModMatrix w = *this, inv = identity(n, p_);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && w(piv, c) == 0) ++piv;
      if (piv == n) return std::nullopt;
      w.swap_rows(piv, c);
      inv.swap_rows(piv, c);
      std::uint64_t s = mod_inverse(w(c, c), p_);
      for (std::size_t k = 0; k < n; ++k) {
        w(c, k) = static_cast<Digit>(w(c, k) * s % p_);
        inv(c, k) = static_cast<Digit>(inv(c, k) * s % p_);
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || !w(r, c)) continue;
        std::uint64_t f = p_ - w(r, c);
        for (std::size_t k = 0; k < n; ++k) {
          w(r, k) = static_cast<Digit>((w(r, k) + f * w(c, k)) % p_);
          inv(r, k) = static_cast<Digit>((inv(r, k) + f * inv(c, k)) % p_);
        }
      }
    }
    return inv;
  }

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  std::size_t rows_ = 0, cols_ = 0;
  unsigned p_ = 2;
  std::vector<Digit> a_;
};

/// Row-indexed sparse generating matrix over Z_b.
///
/// StrictUpper: entries only at k > r (the C of X_b^{Sigma,C}).
/// NUT: upper triangular with nonzero diagonal; diagonal entries that are not
/// stored default to 1, so rows beyond the stored ones are identity rows.
/// General: a finite m x m matrix over a prime base.
class GenMatrix {
 public:
  enum class Kind { StrictUpper, NUT, General };

  GenMatrix(Kind kind, unsigned base, std::size_t dim = 0) : kind_(kind), base_(base), dim_(dim) {
    require_base(base);
    if (kind == Kind::General) {
      require_prime(base);
      if (dim == 0) throw InvalidInput("GenMatrix: General kind needs a dimension");
    }
  }

  static GenMatrix zero(unsigned base) { return GenMatrix(Kind::StrictUpper, base); }
  static GenMatrix nut_identity(unsigned base) { return GenMatrix(Kind::NUT, base); }
  static GenMatrix from_dense(const ModMatrix& M) {
    if (M.rows() != M.cols()) throw InvalidInput("GenMatrix::from_dense: matrix must be square");
    GenMatrix g(Kind::General, M.modulus(), M.rows());
    for (std::size_t r = 0; r < M.rows(); ++r)
      for (std::size_t k = 0; k < M.cols(); ++k)
        if (M(r, k)) g.set(r, k, M(r, k));
    return g;
  }

  Kind kind() const { return kind_; }
  unsigned base() const { return base_; }
  std::size_t dim() const { return dim_; }

  void set(std::size_t r, std::size_t k, Digit v) {
    if (v >= base_) throw InvalidInput("GenMatrix: entry out of range");
    switch (kind_) {
      case Kind::StrictUpper:
        if (k <= r) throw InvalidInput("GenMatrix: strict upper matrix needs k > r");
        break;
      case Kind::NUT:
        if (k < r) throw InvalidInput("GenMatrix: NUT matrix has no entries below the diagonal");
        if (k == r && v == 0) throw InvalidInput("GenMatrix: NUT diagonal must be nonzero");
        break;
      case Kind::General:
        if (r >= dim_ || k >= dim_) throw InvalidInput("GenMatrix: index outside the matrix");
        break;
    }
    if (v == 0) entries_.erase({r, k});
    else entries_[{r, k}] = v;
  }

  Digit at(std::size_t r, std::size_t k) const {
    auto it = entries_.find({r, k});
    if (it != entries_.end()) return it->second;
    return (kind_ == Kind::NUT && r == k) ? 1 : 0;
  }

  /// Nonzero off-diagonal-default entries as ((r, k), value).
  const std::map<std::pair<std::size_t, std::size_t>, Digit>& entries() const { return entries_; }

  /// sum_{k > r} c_r^k d_k mod b (only the strictly upper part).
  Digit upper_dot(std::size_t r, const std::vector<Digit>& d) const {
    std::uint64_t s = 0;
    for (auto it = entries_.lower_bound({r, r + 1}); it != entries_.end() && it->first.first == r; ++it)
      if (it->first.second < d.size()) s += static_cast<std::uint64_t>(it->second) * d[it->first.second];
    return static_cast<Digit>(s % base_);
  }

  /// sum_{k >= r} c_r^k d_k mod b, with the implicit NUT diagonal.
  Digit row_dot(std::size_t r, const std::vector<Digit>& d) const {
    std::uint64_t s = upper_dot(r, d);
    if (r < d.size()) s += static_cast<std::uint64_t>(at(r, r)) * d[r];
    if (kind_ == Kind::General)
      for (auto it = entries_.lower_bound({r, 0}); it != entries_.end() && it->first.first == r && it->first.second < r;
           ++it)
        if (it->first.second < d.size()) s += static_cast<std::uint64_t>(it->second) * d[it->first.second];
    return static_cast<Digit>(s % base_);
  }

  ModMatrix dense(std::size_t m) const {
    ModMatrix M(m, m, base_);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t k = 0; k < m; ++k) M(r, k) = at(r, k);
    return M;
  }

 private:
  Kind kind_;
  unsigned base_;
  std::size_t dim_;
  std::map<std::pair<std::size_t, std::size_t>, Digit> entries_;
};

}  // namespace qmc
