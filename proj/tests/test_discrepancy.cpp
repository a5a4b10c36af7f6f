#include <gtest/gtest.h>

#include <qmcdisc/discrepancy.hpp>
#include <qmcdisc/random.hpp>

using namespace qmc;

namespace {
using Pts = std::vector<std::pair<Rational, Rational>>;

Rational rnd_coord(Rng& rng, std::int64_t den, bool allow_one = false) {
  return Rational(static_cast<std::int64_t>(rng.below(den + (allow_one ? 1 : 0))), den);
}

/// Sup over [0,alpha) of the 1D local discrepancy on a fine candidate set.
std::pair<Rational, Rational> one_d_by_candidates(const std::vector<Rational>& xs) {
  Rational N(static_cast<std::int64_t>(xs.size()));
  std::vector<Rational> cand{Rational(1)};
  for (const auto& x : xs) cand.push_back(x);
  Rational dp(0), dm(0);
  for (const auto& a : cand) {
    std::int64_t closed = 0, open = 0;
    for (const auto& x : xs) {
      closed += x <= a && x < Rational(1);
      open += x < a;
    }
    if (a < Rational(1)) dp = max(dp, Rational(closed) - N * a);
    dm = max(dm, N * a - Rational(open));
  }
  return {dp, dm};
}

/// Extreme discrepancy over all [a, b) by brute force on candidates.
Rational extreme_brute(const std::vector<Rational>& xs) {
  Rational N(static_cast<std::int64_t>(xs.size()));
  std::vector<Rational> cand{Rational(0), Rational(1)};
  for (const auto& x : xs) cand.push_back(x);
  Rational best(0);
  for (const auto& a : cand)
    for (const auto& b : cand) {
      if (!(a <= b)) continue;
      std::int64_t cc = 0, oo = 0;  // [a, b] and (a, b)
      for (const auto& x : xs) {
        cc += a <= x && x <= b && x < Rational(1);
        oo += a < x && x < b;
      }
      if (b < Rational(1)) best = max(best, Rational(cc) - N * (b - a));
      best = max(best, N * (b - a) - Rational(oo));
    }
  return best;
}
}  // namespace

TEST(LocalDelta, Examples) {
  std::vector<std::vector<Rational>> P{{Rational(1, 3), Rational(1, 5)}, {Rational(0), Rational(1, 2)}};
  EXPECT_EQ(local_delta(P, {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}), Rational(0));
  EXPECT_EQ(local_delta({{Rational(0)}}, {{Rational(0)}, {Rational(1, 2)}}), Rational(1, 2));
  std::vector<std::vector<Rational>> H{{Rational(0), Rational(0)},
                                       {Rational(1, 2), Rational(1, 4)},
                                       {Rational(1, 4), Rational(1, 2)},
                                       {Rational(3, 4), Rational(3, 4)}};
  EXPECT_EQ(local_delta(H, {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 2)}}), Rational(0));
  EXPECT_THROW(local_delta(H, {{Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(1)}}), InvalidInput);
}

TEST(Disc1D, Examples) {
  auto r0 = disc_1d(std::vector<Rational>{Rational(0)});
  EXPECT_EQ(*r0.dplus, Rational(1));
  EXPECT_EQ(*r0.dminus, Rational(0));
  EXPECT_EQ(*r0.dstar, Rational(1));
  EXPECT_EQ(*r0.dextreme, Rational(1));
  auto r1 = disc_1d(std::vector<Rational>{Rational(1, 2)});
  EXPECT_EQ(*r1.dplus, Rational(1, 2));
  EXPECT_EQ(*r1.dminus, Rational(1, 2));
  EXPECT_EQ(*r1.dstar, Rational(1, 2));
  EXPECT_EQ(*r1.dextreme, Rational(1));
  EXPECT_EQ(*disc_1d(std::vector<Rational>{Rational(0), Rational(1, 2)}).dstar, Rational(1));
  EXPECT_THROW(disc_1d(std::vector<Rational>{}), InvalidInput);
}

TEST(Disc1D, SortedClosedFormExamples) {
  EXPECT_EQ(star_disc_1d_sorted({Rational(1, 2)}), Rational(1, 2));
  EXPECT_EQ(star_disc_1d_sorted({Rational(0), Rational(1, 2)}), Rational(1));
  EXPECT_EQ(star_disc_1d_sorted({Rational(0), Rational(1, 2), Rational(1, 4), Rational(3, 4)}), Rational(1));
  EXPECT_THROW(star_disc_1d_sorted({}), InvalidInput);
}

TEST(Disc1D, AgreesWithCandidateSweep) {
  Rng rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t N = 1 + rng.below(12);
    std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(12));
    std::vector<Rational> xs;
    for (std::size_t i = 0; i < N; ++i) xs.push_back(rnd_coord(rng, den, trial % 3 == 0));
    auto r = disc_1d(xs);
    auto [dp, dm] = one_d_by_candidates(xs);
    EXPECT_EQ(*r.dplus, dp);
    EXPECT_EQ(*r.dminus, dm);
    EXPECT_EQ(*r.dstar, max(dp, dm));
    EXPECT_EQ(*r.dextreme, extreme_brute(xs));
    EXPECT_EQ(*r.dextreme, *r.dplus + *r.dminus);
    bool below_one = std::all_of(xs.begin(), xs.end(), [](const Rational& x) { return x < Rational(1); });
    if (below_one) {
      EXPECT_EQ(star_disc_1d_sorted(xs), *r.dstar);
      EXPECT_GE(*r.dstar, Rational(1, 2));
    }
  }
}

TEST(Disc1D, PrefixMatchesBatch) {
  Rng rng(32);
  Prefix1D pre;
  std::vector<Rational> xs;
  for (int i = 0; i < 60; ++i) {
    Rational x = rnd_coord(rng, 97);
    xs.push_back(x);
    pre.add(x);
    auto a = pre.report(), b = disc_1d(xs);
    EXPECT_EQ(*a.dplus, *b.dplus);
    EXPECT_EQ(*a.dminus, *b.dminus);
    EXPECT_EQ(*a.dextreme, *b.dextreme);
  }
}

TEST(Star2D, Examples) {
  EXPECT_EQ(star_disc_2d(Pts{{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 2)}}), Rational(3, 2));
  EXPECT_EQ(star_disc_2d(Pts{{Rational(0), Rational(0)}}), Rational(1));
  auto h1 = hammersley(2, 1, {Perm::identity(2)});
  EXPECT_EQ(star_disc_2d(h1), Rational(3, 2));
  EXPECT_THROW(star_disc_2d(Pts{}), InvalidInput);
}

TEST(Star2D, SweepMatchesBruteForce) {
  Rng rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t N = 1 + rng.below(trial < 200 ? 12 : 60);
    std::int64_t dx = 1 + static_cast<std::int64_t>(rng.below(16)), dy = 1 + static_cast<std::int64_t>(rng.below(16));
    Pts P;
    for (std::size_t i = 0; i < N; ++i)
      P.emplace_back(rnd_coord(rng, dx, trial % 4 == 0), rnd_coord(rng, dy, trial % 5 == 0));
    Rational fast = star_disc_2d(P), slow = star_disc_2d_bruteforce(P);
    ASSERT_EQ(fast, slow) << "trial " << trial;
    Pts T;
    for (const auto& [x, y] : P) T.emplace_back(y, x);
    EXPECT_EQ(star_disc_2d(T), fast);
  }
}

TEST(Star2D, HammersleyAgainstBruteForce) {
  for (unsigned b : {2u, 3u})
    for (std::size_t m = 1; m <= (b == 2 ? 6u : 4u); ++m) {
      Rng rng(34 + m);
      std::vector<Perm> s;
      for (std::size_t i = 0; i < m; ++i) s.push_back(random_perm(rng, b));
      auto P = hammersley(b, m, s);
      Pts R;
      for (const auto& [x, y] : P.points) R.emplace_back(x.value(), y.value());
      EXPECT_EQ(star_disc_2d(hammersley_grid(b, m, s)), star_disc_2d_bruteforce(R));
      EXPECT_EQ(star_disc_2d(P), star_disc_2d_bruteforce(R));
    }
}

TEST(Star2D, DominatesLocalDelta) {
  Rng rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    Pts P;
    std::vector<std::vector<Rational>> V;
    for (int i = 0; i < 20; ++i) {
      auto x = rnd_coord(rng, 32), y = rnd_coord(rng, 32);
      P.emplace_back(x, y);
      V.push_back({x, y});
    }
    Rational d = star_disc_2d(P);
    for (int k = 0; k < 50; ++k) {
      Box J{{Rational(0), Rational(0)}, {Rational(1 + rng.below(40), 40), Rational(1 + rng.below(40), 40)}};
      EXPECT_GE(d, abs(local_delta(V, J)));
    }
  }
}

TEST(Roth, Examples) {
  auto vdc2 = gvdc_sequence(PermSeq::constant(Perm::identity(2)));
  EXPECT_TRUE(roth_sandwich(vdc2, 4).ok);
  auto r1 = roth_sandwich(vdc2, 1);
  EXPECT_EQ(r1.max_prefix, Rational(1));
  EXPECT_GE(r1.net_dstar, Rational(1));
  EXPECT_LE(r1.net_dstar, Rational(2));
  EXPECT_TRUE(roth_sandwich(std::vector<Rational>{Rational(0), Rational(0)}).ok);
}

TEST(Roth, Grid) {
  for (auto [b, s] : {std::pair{2u, Perm::identity(2)}, {3u, Perm::identity(3)}, {2u, Perm::swap(2)}}) {
    auto S = gvdc_sequence(PermSeq::constant(s));
    for (std::uint64_t base : {2u, 3u})
      for (std::uint64_t N = base; N <= static_cast<std::uint64_t>(ipow(base, 6)); N *= base)
        EXPECT_TRUE(roth_sandwich(S, N).ok) << b << " " << N;
  }
}
