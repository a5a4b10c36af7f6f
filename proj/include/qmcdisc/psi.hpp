#pragma once

// phi/psi functions, exact formula discrepancies of NUT (0,1)-sequences and
// the asymptotic constants alpha_b^sigma.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "corebase.hpp"
#include "discrepancy.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace qmc {

/// A function on [0,1) that is linear on each [bp[i], bp[i+1]), extended to
/// the reals with period 1.
class PiecewiseLinear {
 public:
  struct Segment {
    Rational slope, intercept;  // value = slope * x + intercept on the segment
    Rational at(const Rational& x) const { return slope * x + intercept; }
    friend bool operator==(const Segment&, const Segment&) = default;
  };

  PiecewiseLinear() : PiecewiseLinear({Rational(0), Rational(1)}, {Segment{}}) {}

  PiecewiseLinear(std::vector<Rational> breakpoints, std::vector<Segment> segments)
      : bp_(std::move(breakpoints)), seg_(std::move(segments)) {
    if (bp_.size() < 2 || seg_.size() + 1 != bp_.size()) throw InvalidInput("PiecewiseLinear: shape mismatch");
    if (bp_.front() != Rational(0) || bp_.back() != Rational(1))
      throw InvalidInput("PiecewiseLinear: breakpoints must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < bp_.size(); ++i)
      if (!(bp_[i] < bp_[i + 1])) throw InvalidInput("PiecewiseLinear: breakpoints must increase");
    normalize();
  }

  static PiecewiseLinear constant(const Rational& c) { return PiecewiseLinear({Rational(0), Rational(1)}, {Segment{Rational(0), c}}); }

  const std::vector<Rational>& breakpoints() const { return bp_; }
  const std::vector<Segment>& segments() const { return seg_; }

  /// Value at x, reduced mod 1.
  Rational operator()(const Rational& x) const {
    Rational y = x.frac();
    std::size_t i = static_cast<std::size_t>(std::upper_bound(bp_.begin(), bp_.end(), y) - bp_.begin()) - 1;
    return seg_[std::min(i, seg_.size() - 1)].at(y);
  }

  /// True when every slope and intercept is an integer (all phi/psi functions).
  bool integral() const {
    return std::all_of(seg_.begin(), seg_.end(), [](const Segment& s) { return s.slope.is_integer() && s.intercept.is_integer(); });
  }

  /// D * f(Y / D) for 0 <= Y < D; requires integral().
  i128 eval_scaled(i128 Y, i128 D) const {
    std::size_t lo = 0, hi = seg_.size();  // find the last i with bp[i] <= Y/D
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (i128(bp_[mid].num()) * D <= Y * bp_[mid].den()) lo = mid;
      else hi = mid;
    }
    return i128(seg_[lo].slope.num()) * Y + i128(seg_[lo].intercept.num()) * D;
  }

  /// Least common multiple of the breakpoint denominators.
  std::int64_t breakpoint_lcm() const {
    i128 l = 1;
    for (const auto& b : bp_) l = l / detail::gcd128(l, b.den()) * b.den();
    return detail::narrow(l);
  }

  friend PiecewiseLinear operator-(const PiecewiseLinear& f) {
    std::vector<Segment> s = f.seg_;
    for (auto& x : s) x = Segment{-x.slope, -x.intercept};
    return PiecewiseLinear(f.bp_, std::move(s));
  }

  friend PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    return combine(f, g, [](const Segment& a, const Segment& b, const Rational&, const Rational&) {
      return std::vector<std::pair<Rational, Segment>>{{Rational(-1), Segment{a.slope + b.slope, a.intercept + b.intercept}}};
    });
  }

  /// Pointwise maximum; crossing points inside a segment become breakpoints.
  friend PiecewiseLinear max(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    return combine(f, g, [](const Segment& a, const Segment& b, const Rational& l, const Rational& r) {
      std::vector<std::pair<Rational, Segment>> out;  // (start, segment); start -1 means "from l"
      Rational dl = a.at(l) - b.at(l), dr = a.at(r) - b.at(r);
      if ((dl < Rational(0) && dr > Rational(0)) || (dl > Rational(0) && dr < Rational(0))) {
        Rational xc = (b.intercept - a.intercept) / (a.slope - b.slope);
        out.push_back({Rational(-1), dl > Rational(0) ? a : b});
        out.push_back({xc, dl > Rational(0) ? b : a});
      } else {
        out.push_back({Rational(-1), (dl + dr >= Rational(0)) ? a : b});
      }
      return out;
    });
  }

  friend bool operator==(const PiecewiseLinear& f, const PiecewiseLinear& g) { return f.bp_ == g.bp_ && f.seg_ == g.seg_; }

 private:
  template <class Op>
  static PiecewiseLinear combine(const PiecewiseLinear& f, const PiecewiseLinear& g, Op op) {
    std::vector<Rational> pts;
    std::merge(f.bp_.begin(), f.bp_.end(), g.bp_.begin(), g.bp_.end(), std::back_inserter(pts));
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Rational> bp{Rational(0)};
    std::vector<Segment> seg;
    std::size_t fi = 0, gi = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Rational& l = pts[i];
      const Rational& r = pts[i + 1];
      while (f.bp_[fi + 1] <= l) ++fi;
      while (g.bp_[gi + 1] <= l) ++gi;
      auto pieces = op(f.seg_[fi], g.seg_[gi], l, r);
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (k > 0) bp.push_back(pieces[k].first);
        seg.push_back(pieces[k].second);
      }
      bp.push_back(r);
    }
    return PiecewiseLinear(std::move(bp), std::move(seg));
  }

  void normalize() {
    std::vector<Rational> bp{bp_.front()};
    std::vector<Segment> seg{seg_.front()};
    for (std::size_t i = 1; i < seg_.size(); ++i) {
      if (seg_[i] == seg.back()) continue;
      bp.push_back(bp_[i]);
      seg.push_back(seg_[i]);
    }
    bp.push_back(bp_.back());
    bp_ = std::move(bp);
    seg_ = std::move(seg);
  }

  std::vector<Rational> bp_;
  std::vector<Segment> seg_;
};

/// phi_{b,h}^sigma: on [(k-1)/b, k/b) it is #{i<k: sigma(i)<h} - h x when
/// h <= sigma(k-1), and (b-h) x - #{i<k: sigma(i)>=h} otherwise.
inline PiecewiseLinear phi(const Perm& sigma, unsigned h) {
  const unsigned b = sigma.base();
  if (h >= b) throw InvalidInput("phi: h must be in [0, b)");
  std::vector<Rational> bp;
  std::vector<PiecewiseLinear::Segment> seg;
  for (unsigned k = 1; k <= b; ++k) {
    bp.emplace_back(k - 1, b);
    std::int64_t below = 0, above = 0;
    for (unsigned i = 0; i < k; ++i) (sigma(i) < h ? below : above) += 1;
    if (h <= sigma(k - 1)) seg.push_back({Rational(-static_cast<std::int64_t>(h)), Rational(below)});
    else seg.push_back({Rational(static_cast<std::int64_t>(b - h)), Rational(-above)});
  }
  bp.emplace_back(1);
  return PiecewiseLinear(std::move(bp), std::move(seg));
}

struct PsiFunctions {
  PiecewiseLinear plus, minus, total;
};

/// psi+ = max_h phi_h, psi- = max_h (-phi_h), psi = psi+ + psi-.
inline PsiFunctions psi_fns(const Perm& sigma) {
  PiecewiseLinear p = phi(sigma, 0), m = -phi(sigma, 0);
  for (unsigned h = 1; h < sigma.base(); ++h) {
    PiecewiseLinear f = phi(sigma, h);
    p = max(p, f);
    m = max(m, -f);
  }
  return {p, m, p + m};
}

/// psi functions of a permutation and all of its translations.
class PsiCache {
 public:
  /// psi functions of (sigma ⊎ t).
  const PsiFunctions& get(const Perm& sigma, std::uint64_t t = 0) {
    Perm key = t % sigma.base() ? translate(sigma, t) : sigma;
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, psi_fns(key)).first;
    return it->second;
  }

 private:
  std::map<Perm, PsiFunctions> cache_;
};

/// theta_r(N) = sum_{k>r} c_r^k a_k mod b, a = digits of N - 1.
inline Digit theta(const GenMatrix& C, std::size_t r, std::uint64_t N) {
  if (N < 1) throw InvalidInput("theta: N must be >= 1");
  const unsigned b = C.base();
  std::vector<Digit> a = digits(N - 1, b, digit_count(N - 1, b));
  return C.upper_dot(r, a);
}

/// Exact D+, D-, D*, D of the first N points of X_b^{Sigma,C} from the psi
/// series. The head is summed term by term; once Sigma is constant, theta
/// vanishes and N/b^j <= 1/b, the tail is a geometric series.
inline DiscReport formula_disc(const PermSeq& sigma, const GenMatrix& C, std::uint64_t N, PsiCache* cache = nullptr) {
  if (N < 1) throw InvalidInput("formula_disc: N must be >= 1");
  if (C.kind() != GenMatrix::Kind::StrictUpper) throw InvalidInput("formula_disc: C must be strict upper triangular");
  const unsigned b = sigma.base();
  if (C.base() != b) throw InvalidInput("formula_disc: base mismatch");
  auto tail = sigma.constant_tail();
  if (!tail) throw InvalidInput("formula_disc: the permutation sequence must be eventually constant");
  PsiCache local;
  PsiCache& pc = cache ? *cache : local;

  const std::size_t L = digit_count(N - 1, b);
  const std::size_t J = std::max({L, tail->first + 1, static_cast<std::size_t>(ceil_log(N, b)) + 1, std::size_t{1}});
  std::vector<Digit> a = digits(N - 1, b, L);
  Rational dp(0), dm(0), d(0);
  for (std::size_t j = 1; j < J; ++j) {
    const std::size_t r = j - 1;
    const Perm s = sigma.sigma_at(r);
    const Digit th = C.upper_dot(r, a);
    const Rational x(static_cast<std::int64_t>(N), ipow(b, static_cast<unsigned>(j)));
    const PsiFunctions& tr = pc.get(s, th);
    dp += tr.plus(x);
    dm += tr.minus(x);
    d += pc.get(s).total(x);
  }
  const Perm& st = tail->second;
  const Rational geo(static_cast<std::int64_t>(N), ipow(b, static_cast<unsigned>(J - 1)) * (b - 1));
  dp += Rational(b - 1 - st(0)) * geo;
  dm += Rational(st(0)) * geo;
  d += Rational(b - 1) * geo;

  DiscReport rep;
  rep.N = N;
  rep.dplus = dp;
  rep.dminus = dm;
  rep.dstar = max(dp, dm);
  rep.dextreme = d;
  rep.method = DiscMethod::Formula;
  return rep;
}

inline DiscReport formula_disc(const PermSeq& sigma, std::uint64_t N) { return formula_disc(sigma, GenMatrix::zero(sigma.base()), N); }

struct AlphaEstimate {
  unsigned b = 2;
  Perm sigma;
  std::vector<Rational> a;  // a[n-1] = max over one period of sum_{j<=n} f(x / b^j)
  Rational estimate;        // min_n a_n / n
  std::size_t n_max = 0;
};

inline constexpr std::uint64_t kDefaultBreakpointBudget = 200'000'000;

/// a_n for n = 1..n_max of x -> sum_{j=1}^n f(x / b^j), maximized over the
/// period [0, b^n) by evaluating at every breakpoint of every term.
inline std::vector<Rational> periodic_sum_maxima(const PiecewiseLinear& f, unsigned b, std::size_t n_max,
                                                 std::uint64_t budget = kDefaultBreakpointBudget) {
  if (n_max < 1) throw InvalidInput("alpha: n_max must be >= 1");
  if (!f.integral()) throw InvalidInput("alpha: function must have integer slopes and intercepts");
  const std::int64_t Lden = f.breakpoint_lcm();
  std::vector<std::int64_t> Q;  // breakpoints in [0,1) scaled by Lden
  for (std::size_t i = 0; i + 1 < f.breakpoints().size(); ++i)
    Q.push_back(f.breakpoints()[i].num() * (Lden / f.breakpoints()[i].den()));
  // Cost check before any work.
  {
    u128 total = 0;
    for (std::size_t n = 1; n <= n_max; ++n)
      for (std::size_t j = 1; j <= n; ++j) total += u128(Q.size()) * ipow(b, static_cast<unsigned>(n - j)) * n;
    if (total > budget)
      throw CapExceeded("alpha: breakpoint evaluations exceed the budget of " + std::to_string(budget));
  }
  std::vector<Rational> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::vector<i128> pw(n + 1);
    pw[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) pw[i] = pw[i - 1] * b;
    i128 best = std::numeric_limits<std::int64_t>::min();
    for (std::size_t j = 1; j <= n; ++j) {
      for (i128 p = 0; p < pw[n - j]; ++p)
        for (std::int64_t q : Q) {
          const i128 Xs = pw[j] * (q + p * Lden);  // x * Lden
          i128 total = 0;
          for (std::size_t i = 1; i <= n; ++i) {
            const i128 D = Lden * pw[i];
            total += f.eval_scaled(Xs % D, D) * pw[n - i];
          }
          best = std::max(best, total);
        }
    }
    out.push_back(Rational::from_i128(best, Lden * pw[n]));
  }
  return out;
}

inline AlphaEstimate make_estimate(unsigned b, const Perm& sigma, std::vector<Rational> a) {
  AlphaEstimate e{b, sigma, std::move(a), Rational(0), 0};
  e.n_max = e.a.size();
  e.estimate = e.a[0];
  for (std::size_t n = 1; n <= e.a.size(); ++n) e.estimate = min(e.estimate, e.a[n - 1] / Rational(static_cast<std::int64_t>(n)));
  return e;
}

/// Upper estimate of alpha_b^sigma = inf_n a_n / n.
inline AlphaEstimate alpha(const Perm& sigma, std::size_t n_max, std::uint64_t budget = kDefaultBreakpointBudget) {
  return make_estimate(sigma.base(), sigma, periodic_sum_maxima(psi_fns(sigma).total, sigma.base(), n_max, budget));
}

/// Upper estimates of alpha_b^{sigma,+} and alpha_b^{sigma,-}.
inline std::pair<AlphaEstimate, AlphaEstimate> alpha_pm(const Perm& sigma, std::size_t n_max,
                                                        std::uint64_t budget = kDefaultBreakpointBudget) {
  PsiFunctions f = psi_fns(sigma);
  const unsigned b = sigma.base();
  return {make_estimate(b, sigma, periodic_sum_maxima(f.plus, b, n_max, budget)),
          make_estimate(b, sigma, periodic_sum_maxima(f.minus, b, n_max, budget))};
}

/// Closed form of alpha_b^id: b^2 / (4(b+1)) for even b, (b-1)/4 for odd b.
inline Rational alpha_id_closed(unsigned b) {
  require_base(b);
  const std::int64_t B = b;
  return b % 2 == 0 ? Rational(B * B, 4 * (B + 1)) : Rational(B - 1, 4);
}

/// max over 1 <= n <= b^m of sum_{j=1}^m psi^{sigma_{j-1},sign}(n / b^j),
/// for sign = plus and minus: the psi part of the Hammersley star discrepancy.
inline std::pair<Rational, Rational> hammersley_psi_maxima(unsigned b, const std::vector<Perm>& sigmas) {
  const std::size_t m = sigmas.size();
  PsiCache pc;
  std::vector<const PsiFunctions*> fs;
  for (const auto& s : sigmas) {
    if (s.base() != b) throw InvalidInput("hammersley_psi_maxima: base mismatch");
    fs.push_back(&pc.get(s));
  }
  std::vector<i128> pw(m + 1);
  pw[0] = 1;
  for (std::size_t i = 1; i <= m; ++i) pw[i] = pw[i - 1] * b;
  i128 bp = 0, bm = 0;
  for (i128 n = 1; n <= pw[m]; ++n) {
    i128 sp = 0, sm = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const i128 Y = n % pw[j];
      sp += fs[j - 1]->plus.eval_scaled(Y, pw[j]) * pw[m - j];
      sm += fs[j - 1]->minus.eval_scaled(Y, pw[j]) * pw[m - j];
    }
    bp = std::max(bp, sp);
    bm = std::max(bm, sm);
  }
  return {Rational::from_i128(bp, pw[m]), Rational::from_i128(bm, pw[m])};
}

}  // namespace qmc
