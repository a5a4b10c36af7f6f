#include <gtest/gtest.h>

#include <qmcdisc/corebase.hpp>
#include <qmcdisc/random.hpp>

using namespace qmc;

TEST(Digits, Examples) {
  EXPECT_EQ(digits(6, 2, 4), (std::vector<Digit>{0, 1, 1, 0}));
  EXPECT_EQ(digits(0, 3, 5), (std::vector<Digit>{0, 0, 0, 0, 0}));
  EXPECT_EQ(digits(5, 3, 3), (std::vector<Digit>{2, 1, 0}));
  EXPECT_THROW(digits(8, 2, 3), DigitOverflow);
}

TEST(Digits, Reconstruct) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    unsigned b = 2 + static_cast<unsigned>(rng.below(15));
    std::uint64_t n = rng.below(1'000'000);
    auto d = digits(n, b, 20);
    std::uint64_t back = 0;
    for (std::size_t k = d.size(); k-- > 0;) back = back * b + d[k];
    EXPECT_EQ(back, n);
  }
}

TEST(RadicalInverse, Examples) {
  EXPECT_EQ(radical_inverse(1, 2).value(), Rational(1, 2));
  EXPECT_EQ(radical_inverse(3, 2).value(), Rational(3, 4));
  EXPECT_EQ(radical_inverse(4, 3).value(), Rational(4, 9));
  EXPECT_EQ(radical_inverse(0, 5).value(), Rational(0));
}

TEST(Truncate, Examples) {
  EXPECT_EQ(truncate([](std::size_t) { return 1; }, 2, 2).value(), Rational(3, 4));
  BaseRational short_x(3, {1, 2});
  EXPECT_EQ(truncate([&](std::size_t i) { return i < 2 ? short_x.digits()[i] : 0; }, 3, 5).value(), short_x.value());
  EXPECT_EQ(truncate([](std::size_t) { return 2; }, 3, 3).value(), Rational(26, 27));
  EXPECT_THROW(truncate([](std::size_t) { return 0; }, 2, 0), InvalidInput);
}

TEST(BaseRational, EqualityStripsTrailingZeros) {
  EXPECT_EQ(BaseRational(2, {1, 0, 0}), BaseRational(2, {1}));
  EXPECT_NE(BaseRational(2, {1, 0, 1}), BaseRational(2, {1}));
  EXPECT_THROW(BaseRational(2, {2}), InvalidInput);
}

TEST(BaseRational, RoundTrip) {
  Rng rng(2);
  for (int i = 0; i < 300; ++i) {
    unsigned b = 2 + static_cast<unsigned>(rng.below(9));
    std::size_t len = rng.below(12);
    std::vector<Digit> d(len);
    for (auto& x : d) x = static_cast<Digit>(rng.below(b));
    BaseRational x(b, d);
    EXPECT_EQ(BaseRational::from_rational(x.value(), b), x);
    EXPECT_EQ(BaseRational::from_rational(x.value(), b).value(), x.value());
  }
  EXPECT_THROW(BaseRational::from_rational(Rational(1, 3), 2), InvalidInput);
}

TEST(Perm, Examples) {
  EXPECT_EQ(translate(Perm::identity(4), 0), Perm::identity(4));
  EXPECT_EQ(Perm::swap(2).table(), (std::vector<Digit>{1, 0}));
  EXPECT_EQ(Perm::swap(2), translate(Perm::identity(2), 1));
  EXPECT_EQ(Perm::swap(3).table(), (std::vector<Digit>{2, 1, 0}));
  EXPECT_EQ(compose(Perm::swap(3), Perm::swap(3)), Perm::identity(3));
  EXPECT_EQ(Perm::linear(2, 1, 3).table(), (std::vector<Digit>{1, 0, 2}));
  EXPECT_THROW(Perm::linear(2, 0, 4), NotABijection);
  EXPECT_THROW(Perm::linear(0, 1, 5), NotABijection);
  EXPECT_THROW(Perm({0, 0, 1}), NotABijection);
}

TEST(Perm, ParseAndPrint) {
  EXPECT_EQ(Perm::parse("2,0,1").str(), "2,0,1");
  EXPECT_EQ(Perm::parse("tau", 4), Perm::swap(4));
  EXPECT_EQ(Perm::parse("id", 3), Perm::identity(3));
  EXPECT_THROW(Perm::parse("id"), InvalidInput);
  EXPECT_THROW(Perm::parse("0,1,1"), NotABijection);
  EXPECT_THROW(Perm::parse("0,x"), std::exception);
}

TEST(Perm, Properties) {
  Rng rng(3);
  for (unsigned b = 2; b <= 16; ++b) {
    EXPECT_EQ(compose(Perm::swap(b), Perm::swap(b)), Perm::identity(b));
    for (int i = 0; i < 20; ++i) {
      Perm s = random_perm(rng, b);
      std::uint64_t t1 = rng.below(b), t2 = rng.below(b);
      EXPECT_EQ(translate(s, (t1 + t2) % b), translate(translate(s, t1), t2));
      EXPECT_EQ(Perm::parse(s.str()), s);
    }
  }
  for (unsigned b = 2; b <= 9; ++b)
    for (unsigned f = 1; f < b; ++f)
      if (std::gcd(f, b) == 1) {
        auto lf = Perm::linear(f, 3, b).linear_form();
        ASSERT_TRUE(lf);
        EXPECT_EQ(lf->first, f % b);
      }
}

TEST(PermSeq, Examples) {
  Perm s({1, 2, 0});
  auto fa = PermSeq::faure_a(s);
  EXPECT_EQ(fa.sigma_at(0), s);
  EXPECT_EQ(fa.sigma_at(1), compose(Perm::swap(3), s));
  auto c = PermSeq::constant(s);
  for (std::uint64_t r : {0u, 5u, 1000u}) EXPECT_EQ(c.sigma_at(r), s);
}

TEST(PermSeq, FaureSetMatchesBlocks) {
  // A = union over H >= 1 of {H(H-1), ..., H^2 - 1}, by direct enumeration.
  for (std::uint64_t r = 0; r < 200; ++r) {
    bool in = false;
    for (std::uint64_t H = 1; H <= r + 1; ++H) in = in || (H * (H - 1) <= r && r <= H * H - 1);
    EXPECT_EQ(in_faure_set(r), in) << r;
  }
  // sigma, sigma-bar, sigma, sigma, sigma-bar, sigma-bar, ...
  std::vector<bool> expect{true, false, true, true, false, false, true, true, true, false};
  for (std::size_t r = 0; r < expect.size(); ++r) EXPECT_EQ(in_faure_set(r), expect[r]);
}

TEST(PermSeq, RulesAndText) {
  Perm s = Perm::identity(3), t = Perm::swap(3);
  auto e = PermSeq::explicit_then_tail({t, t}, s);
  EXPECT_EQ(e.sigma_at(1), t);
  EXPECT_EQ(e.sigma_at(2), s);
  EXPECT_EQ(e.constant_tail()->first, 2u);
  auto sw = PermSeq::swap_set(s, {true, false, true}, false);
  EXPECT_EQ(sw.sigma_at(0), s);
  EXPECT_EQ(sw.sigma_at(1), t);
  EXPECT_EQ(sw.sigma_at(100), t);
  EXPECT_EQ(sw.constant_tail()->second, t);
  EXPECT_FALSE(PermSeq::faure_a(s).constant_tail());
  for (const auto& ps : {e, sw, PermSeq::faure_a(s), PermSeq::constant(t)}) {
    auto back = PermSeq::parse(ps.str());
    for (std::uint64_t r = 0; r < 50; ++r) EXPECT_EQ(back.sigma_at(r), ps.sigma_at(r));
  }
  EXPECT_EQ(PermSeq::parse("const:tau", 5).sigma_at(3), Perm::swap(5));
  EXPECT_THROW(PermSeq::parse("bogus:0,1"), InvalidInput);
  EXPECT_THROW(PermSeq::parse("list:0,1|tail:0,1,2"), InvalidInput);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -2).str(), "-1/2");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(-7, 2).frac(), Rational(1, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  EXPECT_THROW(Rational(std::numeric_limits<std::int64_t>::max()) * Rational(2), std::overflow_error);
}
