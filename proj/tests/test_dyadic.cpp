#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>

#include "prbox/dyadic.hpp"
#include "prbox/error.hpp"

namespace prbox {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kParse;
}

TEST(Dyadic, CanonicalForm) {
  const Dyadic d = Dyadic::from_parts(6, 3);
  EXPECT_EQ(d.numerator(), 3);
  EXPECT_EQ(d.exponent(), 2);
  EXPECT_EQ(Dyadic::from_parts(0, 7), Dyadic(0));
  EXPECT_EQ(Dyadic::from_parts(0, 7).exponent(), 0);
  EXPECT_EQ(Dyadic::from_parts(8, 3), Dyadic(1));
}

TEST(Dyadic, ParseAndPrint) {
  EXPECT_EQ(Dyadic::parse("3/4").to_string(), "3/4");
  EXPECT_EQ(Dyadic::parse("-1/2"), -kHalf);
  EXPECT_EQ(Dyadic::parse("2/4").to_string(), "1/2");
  EXPECT_EQ(Dyadic::parse("-7").to_string(), "-7");
  EXPECT_EQ(Dyadic::parse("0").to_string(), "0");
  EXPECT_EQ(code_of([] { Dyadic::parse("1/3"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { Dyadic::parse("abc"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { Dyadic::parse(""); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { Dyadic::parse("1/0"); }), ErrorCode::kParse);
}

TEST(Dyadic, Arithmetic) {
  EXPECT_EQ(kHalf + kQuarter, Dyadic::parse("3/4"));
  EXPECT_EQ(kHalf - kQuarter, kQuarter);
  EXPECT_EQ(kHalf * kHalf, kQuarter);
  EXPECT_EQ(Dyadic(3).div_pow2(2), Dyadic::parse("3/4"));
  EXPECT_EQ(Dyadic::parse("3/4").divided_by(Dyadic::parse("3/2")), kHalf);
  EXPECT_EQ(code_of([] { Dyadic(1).divided_by(Dyadic(3)); }), ErrorCode::kInexactDivision);
  EXPECT_EQ(code_of([] { Dyadic(1).divided_by(Dyadic(0)); }), ErrorCode::kInexactDivision);
  EXPECT_LT(-kHalf, kQuarter);
  EXPECT_EQ(Dyadic::parse("-3/8").abs(), Dyadic::parse("3/8"));
  EXPECT_DOUBLE_EQ(Dyadic::parse("-3/8").to_double(), -0.375);
}

TEST(Dyadic, OverflowIsReported) {
  const Dyadic big(std::numeric_limits<std::int64_t>::max());
  EXPECT_EQ(code_of([&] { (void)(big + Dyadic(1)); }), ErrorCode::kOverflow);
  EXPECT_EQ(code_of([&] { (void)(big * Dyadic(2)); }), ErrorCode::kOverflow);
  EXPECT_EQ(code_of([] { (void)(Dyadic(1) + Dyadic::from_parts(1, 70)); }), ErrorCode::kOverflow);
}

// Field axioms against doubles on small random dyadics, where doubles are exact.
TEST(Dyadic, RandomAgreementWithDoubles) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
  std::uniform_int_distribution<int> ex(0, 10);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a = Dyadic::from_parts(num(rng), ex(rng));
    const Dyadic b = Dyadic::from_parts(num(rng), ex(rng));
    EXPECT_EQ((a + b).to_double(), a.to_double() + b.to_double());
    EXPECT_EQ((a - b).to_double(), a.to_double() - b.to_double());
    EXPECT_EQ((a * b).to_double(), a.to_double() * b.to_double());
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(Dyadic::parse(a.to_string()), a);
    EXPECT_EQ(a < b, a.to_double() < b.to_double());
  }
}

}  // namespace
}  // namespace prbox
