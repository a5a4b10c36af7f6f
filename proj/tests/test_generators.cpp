#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <qmcdisc/generators.hpp>
#include <qmcdisc/netverify.hpp>
#include <qmcdisc/random.hpp>

using namespace qmc;

namespace {
PermSeq cid(unsigned b) { return PermSeq::constant(Perm::identity(b)); }
PermSeq ctau(unsigned b) { return PermSeq::constant(Perm::swap(b)); }
}  // namespace

TEST(Gvdc, Examples) {
  EXPECT_EQ(gvdc_point(cid(2), 1, 4).value(), Rational(1, 2));
  EXPECT_EQ(gvdc_point(ctau(2), 0, 3).value(), Rational(7, 8));
  EXPECT_EQ(gvdc_point(cid(3), 4, 4).value(), Rational(4, 9));
  for (std::uint64_t n = 0; n < 200; ++n) EXPECT_EQ(gvdc_point(cid(5), n, 6), radical_inverse(n, 5));
}

TEST(Gvdc, ExactTail) {
  // S_2^tau(0) = 0.111... = 1 as a real number; its truncations stay below 1.
  EXPECT_EQ(nut_exact(ctau(2), GenMatrix::zero(2), 0), Rational(1));
  EXPECT_EQ(gvdc_expansion(ctau(3), 1).value(), Rational(1, 3) + Rational(2, 3) * Rational(1, 2) - Rational(0));
}

TEST(Nut, Examples) {
  GenMatrix C(GenMatrix::Kind::StrictUpper, 2);
  C.set(0, 1, 1);
  EXPECT_EQ(nut_point(cid(2), C, 2, 2).value(), Rational(3, 4));
  EXPECT_EQ(nut_point(cid(2), C, 0, 4).value(), Rational(0));
  EXPECT_THROW(C.set(1, 1, 1), InvalidInput);
}

TEST(Nut, ZeroMatrixIsGvdc) {
  Rng rng(11);
  for (unsigned b : {2u, 3u, 5u, 10u})
    for (int i = 0; i < 1000; ++i) {
      PermSeq s = random_permseq(rng, b);
      std::uint64_t n = rng.below(100000);
      EXPECT_EQ(nut_point(s, GenMatrix::zero(b), n, 12), gvdc_point(s, n, 12));
    }
}

TEST(Digital, Examples) {
  auto p = digital_point({ModMatrix::identity(2, 2), ModMatrix::reversal(2, 2)}, 2, 2);
  EXPECT_EQ(p[0].value(), Rational(1, 4));
  EXPECT_EQ(p[1].value(), Rational(1, 2));
  auto q = digital_point({ModMatrix::identity(3, 3), ModMatrix::identity(3, 3)}, 17, 3);
  EXPECT_EQ(q[0], q[1]);
  auto z = digital_point({ModMatrix::identity(3, 5), ModMatrix::reversal(3, 5)}, 0, 3);
  EXPECT_EQ(z[0].value(), Rational(0));
  EXPECT_EQ(z[1].value(), Rational(0));
  EXPECT_THROW(ModMatrix(2, 2, 4), InvalidInput);
}

namespace {
std::multiset<std::pair<std::int64_t, std::int64_t>> as_set(const GridPointSet& g) {
  return {g.points.begin(), g.points.end()};
}
}  // namespace

TEST(Digital, ReversalReproducesHammersley) {
  for (unsigned p : {2u, 3u, 5u})
    for (std::size_t m = 1; m <= 6 && ipow(p, m) <= 20000; ++m) {
      auto h = hammersley_grid(p, m, std::vector<Perm>(m, Perm::identity(p)));
      auto d = digital_grid(ModMatrix::identity(m, p), ModMatrix::reversal(m, p));
      EXPECT_EQ(as_set(h), as_set(d)) << p << " " << m;
      // The BaseRational route agrees with the integer route.
      std::multiset<std::pair<std::int64_t, std::int64_t>> viaBR;
      for (std::uint64_t n = 0; n < static_cast<std::uint64_t>(ipow(p, m)); ++n) {
        auto pt = digital_point({ModMatrix::identity(m, p), ModMatrix::reversal(m, p)}, n, m);
        viaBR.insert({pt[0].scaled(m).first, pt[1].scaled(m).first});
      }
      EXPECT_EQ(viaBR, as_set(h));
    }
}

TEST(Digital, RightMultiplicationInvariance) {
  Rng rng(12);
  for (unsigned p : {2u, 3u})
    for (std::size_t m = 1; m <= 5; ++m)
      for (int trial = 0; trial < 5; ++trial) {
        ModMatrix C1 = random_matrix(rng, m, p), C2 = random_matrix(rng, m, p);
        ModMatrix D = random_zero_net_matrix(rng, m, p);  // nonsingular
        ASSERT_EQ(D.rank(), m);
        EXPECT_EQ(as_set(digital_grid(C1, C2)), as_set(digital_grid(C1 * D, C2 * D)));
      }
}

TEST(Hammersley, Examples) {
  auto h1 = hammersley(2, 1, {Perm::identity(2)});
  ASSERT_EQ(h1.points.size(), 2u);
  EXPECT_EQ(h1.points[0].first.value(), Rational(0));
  EXPECT_EQ(h1.points[0].second.value(), Rational(0));
  EXPECT_EQ(h1.points[1].first.value(), Rational(1, 2));
  EXPECT_EQ(h1.points[1].second.value(), Rational(1, 2));
  auto h3 = hammersley(2, 3, std::vector<Perm>(3, Perm::identity(2)));
  EXPECT_TRUE(is_net(h3, 0));
  auto ht = hammersley(3, 2, std::vector<Perm>(2, Perm::swap(3)));
  EXPECT_EQ(ht.points.size(), 9u);
  EXPECT_EQ(ht.points[0].first.value(), Rational(8, 9));
}

TEST(Hammersley, FirstCoordinateIsRadicalInverse) {
  for (unsigned b : {2u, 3u, 7u}) {
    std::size_t m = b == 7 ? 3 : 5;
    auto h = hammersley(b, m, std::vector<Perm>(m, Perm::identity(b)));
    auto g = hammersley_grid(b, m, std::vector<Perm>(m, Perm::identity(b)));
    for (std::size_t n = 0; n < h.points.size(); ++n) {
      EXPECT_EQ(h.points[n].first, radical_inverse(n, b));
      EXPECT_EQ(h.points[n].second.value(), Rational(static_cast<std::int64_t>(n), ipow(b, m)));
      EXPECT_EQ(g.points[n].first, h.points[n].first.scaled(m).first);
    }
  }
}

TEST(SwapVector, Examples) {
  Perm id = Perm::identity(2), tau = Perm::swap(2);
  EXPECT_EQ(swap_vector(SwapKind::IdTau, 4, id), (std::vector<Perm>{id, id, tau, tau}));
  EXPECT_EQ(swap_vector(SwapKind::IdTau, 5, id), (std::vector<Perm>{id, id, tau, tau, tau}));
  EXPECT_EQ(swap_vector(SwapKind::Alternating, 4, id), (std::vector<Perm>{id, tau, id, tau}));
  EXPECT_THROW(swap_vector(SwapKind::Alternating, 5, id), InvalidInput);
  Perm s({1, 2, 0});
  auto ss = swap_vector(SwapKind::SigmaSigmaBar, 3, s);
  EXPECT_EQ(ss, (std::vector<Perm>{s, compose(Perm::swap(3), s), compose(Perm::swap(3), s)}));
}

TEST(Special, Examples) {
  auto x = special_sequence(SpecialKind::XbIdTau, {3});
  EXPECT_EQ(x.point(1, 2)[0].value(), Rational(8, 9));
  EXPECT_EQ(x.exact(1)[0], Rational(1));
  EXPECT_EQ(x.exact(0)[0], Rational(0));
  EXPECT_EQ(x.exact(2)[0], Rational(1, 3));  // S^id(1)
  EXPECT_EQ(x.exact(3)[0], Rational(1, 9));  // S^id(3)

  EXPECT_EQ(ModMatrix::pascal(3, 2)(0, 0), 1u);
  ModMatrix P = ModMatrix::pascal(3, 2);
  std::vector<std::vector<Digit>> rows{{1, 1, 1}, {0, 1, 0}, {0, 0, 1}};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(P(r, k), rows[r][k]);

  auto inner = gvdc_sequence(cid(2));
  auto rep = special_sequence(SpecialKind::RepeatT, {2, 1, 1, &inner});
  EXPECT_EQ(rep.exact(0)[0], Rational(0));
  EXPECT_EQ(rep.exact(1)[0], Rational(0));
  EXPECT_EQ(rep.exact(2)[0], Rational(1, 2));
}

TEST(Special, PascalSequenceMatchesDenseMatrix) {
  auto sob = special_sequence(SpecialKind::PascalDigital, {2, 2});
  const std::size_t m = 6;
  ModMatrix P = ModMatrix::pascal(m, 2);
  for (std::uint64_t n = 0; n < 64; ++n) {
    auto pt = sob.point(n, m);
    auto ref = digital_point({ModMatrix::identity(m, 2), P}, n, m);
    EXPECT_EQ(pt[0], ref[0]);
    EXPECT_EQ(pt[1], ref[1]);
  }
  EXPECT_TRUE(check_sequence_prefix(sob, 2, 2, 0, 6, 2));
}

TEST(Special, X2C0Digits) {
  auto x = special_sequence(SpecialKind::X2C0, {});
  // n odd: 3/2 - phi_2(n); n even: phi_2(n).
  for (std::uint64_t n = 0; n < 64; ++n) {
    Rational ri = radical_inverse(n, 2).value();
    EXPECT_EQ(x.exact(n)[0], n % 2 ? Rational(3, 2) - ri : ri);
  }
  EXPECT_TRUE(check_sequence_prefix(x, 2, 1, 0, 6, 3));
}

TEST(Special, AllOnesIsNet) {
  auto a = special_sequence(SpecialKind::AllOnes2, {});
  EXPECT_EQ(a.exact(1)[0], Rational(1, 2));
  EXPECT_EQ(a.exact(2)[0], Rational(3, 4));  // digits (0,1): y0 = 1, y1 = 1
  EXPECT_TRUE(check_sequence_prefix(a, 2, 1, 0, 6, 3));
}

TEST(Scrambled, Examples) {
  GenMatrix I = GenMatrix::nut_identity(2);
  for (std::uint64_t n = 0; n < 50; ++n) EXPECT_EQ(scrambled_nut(cid(2), I, n, 8), radical_inverse(n, 2).truncated(8));
  EXPECT_EQ(scrambled_nut(ctau(2), I, 0, 3).value(), Rational(7, 8));
  EXPECT_EQ(scrambled_nut(ctau(2), I, 0, 3), gvdc_point(ctau(2), 0, 3));
  EXPECT_THROW(scrambled_nut(PermSeq::constant(Perm({0, 2, 1, 3})), GenMatrix::nut_identity(4), 1, 3), NotABijection);
  EXPECT_NO_THROW(scrambled_nut(PermSeq::constant(Perm({0, 2, 1, 3})), GenMatrix::nut_identity(4), 1, 3, false));
}

TEST(Sequence, DefaultPrecision) {
  EXPECT_EQ(default_precision(2, 512), 17u);
  EXPECT_EQ(default_precision(3, 10, 5), 13u);
}
