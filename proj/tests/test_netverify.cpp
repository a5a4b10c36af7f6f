#include <gtest/gtest.h>

#include <qmcdisc/netverify.hpp>
#include <qmcdisc/random.hpp>

using namespace qmc;

namespace {
std::vector<std::vector<BaseRational>> net_points(const std::vector<ModMatrix>& Cs, std::size_t m) {
  std::vector<std::vector<BaseRational>> P;
  unsigned p = Cs[0].modulus();
  for (std::uint64_t n = 0; n < static_cast<std::uint64_t>(ipow(p, m)); ++n) P.push_back(digital_point(Cs, n, m));
  return P;
}
}  // namespace

TEST(IsNet, Examples) {
  auto h = hammersley(2, 3, std::vector<Perm>(3, Perm::identity(2)));
  EXPECT_TRUE(is_net(h, 0));
  auto diag = net_points({ModMatrix::identity(2, 2), ModMatrix::identity(2, 2)}, 2);
  EXPECT_FALSE(is_net(diag, 2, 2, 2, 0));
  EXPECT_TRUE(is_net(diag, 2, 2, 2, 1));
  std::vector<std::vector<BaseRational>> zeros(9, {BaseRational(3, {}), BaseRational(3, {})});
  EXPECT_TRUE(is_net(zeros, 3, 2, 2, 2));
  EXPECT_THROW(is_net(zeros, 3, 3, 2, 0), InvalidInput);
}

TEST(MinimalT, Examples) {
  EXPECT_EQ(minimal_t(hammersley(2, 4, std::vector<Perm>(4, Perm::identity(2)))), 0u);
  EXPECT_EQ(minimal_t(net_points({ModMatrix::identity(2, 2), ModMatrix::identity(2, 2)}, 2), 2, 2, 2), 1u);
  std::vector<std::vector<BaseRational>> zeros(8, {BaseRational(2, {}), BaseRational(2, {})});
  EXPECT_EQ(minimal_t(zeros, 2, 3, 2), 3u);
}

TEST(RankCheck, Examples) {
  EXPECT_TRUE(digital_rank_check({ModMatrix::identity(3, 2), ModMatrix::reversal(3, 2)}, 3, 0));
  EXPECT_FALSE(digital_rank_check({ModMatrix::identity(2, 2), ModMatrix::identity(2, 2)}, 2, 0));
  EXPECT_TRUE(digital_rank_check({ModMatrix::identity(4, 3)}, 4, 0));
  EXPECT_THROW(digital_rank_check({ModMatrix::identity(2, 2)}, 3, 0), InvalidInput);
}

TEST(RankCheck, AgreesWithCounting) {
  Rng rng(21);
  for (unsigned p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t m = 1 + rng.below(p == 5 ? 3 : 5);
      std::vector<ModMatrix> Cs{random_matrix(rng, m, p), random_matrix(rng, m, p)};
      auto P = net_points(Cs, m);
      for (std::size_t t = 0; t <= m; ++t) EXPECT_EQ(digital_rank_check(Cs, m, t), is_net(P, p, m, 2, t));
      EXPECT_EQ(digital_minimal_t(Cs, m), minimal_t(P, p, m, 2));
    }
  }
}

TEST(IsNet, MonotoneInT) {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t m = 1 + rng.below(5);
    auto P = net_points({random_matrix(rng, m, 2), random_matrix(rng, m, 2)}, m);
    std::size_t t0 = minimal_t(P, 2, m, 2);
    for (std::size_t t = t0; t <= m; ++t) EXPECT_TRUE(is_net(P, 2, m, 2, t));
    // Perturbing points inside their resolution-m cells keeps t.
    for (auto& pt : P)
      for (auto& x : pt) {
        auto d = x.truncated(m).digits();
        d.push_back(1);
        x = BaseRational(2, d);
      }
    EXPECT_EQ(minimal_t(P, 2, m, 2), t0);
  }
}

TEST(SequencePrefix, Examples) {
  auto vdc = gvdc_sequence(PermSeq::constant(Perm::identity(2)));
  EXPECT_TRUE(check_sequence_prefix(vdc, 2, 1, 0, 6, 3));
  auto rep = special_sequence(SpecialKind::RepeatT, {2, 1, 1, &vdc});
  EXPECT_TRUE(check_sequence_prefix(rep, 2, 1, 1, 6, 3));
  EXPECT_FALSE(check_sequence_prefix(rep, 2, 1, 0, 3, 1));
  auto tau3 = gvdc_sequence(PermSeq::constant(Perm::swap(3)));
  EXPECT_TRUE(check_sequence_prefix(tau3, 3, 1, 0, 4, 2));
  auto xt = special_sequence(SpecialKind::XbIdTau, {3});
  EXPECT_TRUE(check_sequence_prefix(xt, 3, 1, 0, 4, 2));
}
