#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "prbox/box_table.hpp"
#include "prbox/catalog.hpp"
#include "prbox/error.hpp"

namespace prbox {
namespace {

TEST(BoxTable, Bitstrings) {
  EXPECT_EQ(bitstring(0b01, 2), "01");
  EXPECT_EQ(parse_bitstring("110", 3), 6u);
  EXPECT_THROW(parse_bitstring("11", 3), Error);
  EXPECT_THROW(parse_bitstring("1a", 2), Error);
  BoxTable t(2);
  EXPECT_EQ(t.bit(0b01, 0), 0);
  EXPECT_EQ(t.bit(0b01, 1), 1);
}

TEST(BoxTable, StateToTableMatchesOracleForEveryConvention) {
  for (int id = 0; id < 8; ++id) {
    const auto conv = FiducialConvention::from_id(id);
    int c[2][2];
    for (int x = 0; x < 2; ++x) {
      for (int a = 0; a < 2; ++a) c[x][a] = conv.effect_index(x, a);
    }
    for (int n = 0; n < 24; ++n) {
      const BoxTable t = state_to_table(bipartite_state(n), conv);
      for (unsigned x = 0; x < 4; ++x) {
        for (unsigned a = 0; a < 4; ++a) {
          EXPECT_EQ(t.prob(a, x).to_double(), oracle::table_entry(oracle::bipartite(n), a, x, c));
        }
      }
    }
  }
}

TEST(BoxTable, ConventionValidation) {
  EXPECT_THROW(FiducialConvention::from_id(8), Error);
  EXPECT_THROW(FiducialConvention({{{0, 2}, {0, 2}}}), Error);
  EXPECT_THROW(FiducialConvention({{{0, 1}, {2, 3}}}), Error);
  std::set<std::array<int, 4>> distinct;
  for (int id = 0; id < 8; ++id) {
    const auto c = FiducialConvention::from_id(id);
    EXPECT_EQ(c.id(), id);
    distinct.insert({c.effect_index(0, 0), c.effect_index(0, 1), c.effect_index(1, 0),
                     c.effect_index(1, 1)});
  }
  EXPECT_EQ(distinct.size(), 8u);
  const auto d = FiducialConvention();
  EXPECT_EQ(d.effect_index(0, 0), 0);
  EXPECT_EQ(d.effect_index(0, 1), 2);
  EXPECT_EQ(d.effect_index(1, 0), 3);
  EXPECT_EQ(d.effect_index(1, 1), 1);
}

TEST(BoxTable, TomographyRoundTrip) {
  for (int id = 0; id < 8; ++id) {
    const auto conv = FiducialConvention::from_id(id);
    for (int n = 0; n < 24; ++n) {
      EXPECT_EQ(table_to_state(state_to_table(bipartite_state(n), conv), conv), bipartite_state(n));
    }
    for (int c : {44, 45, 46}) {
      EXPECT_EQ(state_to_table(tripartite_class_state(c, conv), conv), tripartite_class_table(c));
    }
  }
}

TEST(BoxTable, InvariantViolationsAreNamed) {
  BoxTable signalling(2);
  // Bob's output copies Alice's input.
  for (unsigned x = 0; x < 4; ++x) signalling.set((x >> 1) & 1U, x, 1);
  auto r = check_box_invariants(signalling);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.violated, "no_signalling");
  try {
    table_to_state(signalling);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSignalling);
  }
  BoxTable unnormalized(1);
  unnormalized.set(0, 0, kHalf);
  unnormalized.set(0, 1, 1);
  EXPECT_EQ(check_box_invariants(unnormalized).violated, "normalized");
  BoxTable negative = box_table_single(0, 0);
  negative.set(0, 0, 2);
  negative.set(1, 0, -1);
  EXPECT_EQ(check_box_invariants(negative).violated, "nonnegative");
  EXPECT_TRUE(check_box_invariants(uniform_table(3)).ok);
}

TEST(BoxTable, CatalogFormulas) {
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int g = 0; g < 2; ++g) {
        const BoxTable t = box_table_nonlocal(a, b, g);
        for (unsigned x = 0; x < 4; ++x) {
          for (unsigned o = 0; o < 4; ++o) {
            const int xx = (x >> 1) & 1, yy = x & 1;
            const int parity = ((o >> 1) ^ o) & 1;
            const int rhs = (xx & yy) ^ (a & xx) ^ (b & yy) ^ g;
            EXPECT_EQ(t.prob(o, x), parity == rhs ? kHalf : Dyadic(0));
          }
        }
      }
    }
  }
  EXPECT_EQ(chsh_value(box_table_nonlocal(0, 0, 0)), Dyadic(4));
  EXPECT_EQ(chsh_value(uniform_table(2)), Dyadic(2));
  EXPECT_THROW(chsh_value(uniform_table(3)), Error);
  EXPECT_EQ(deterministic_parity(box_table_nonlocal(0, 0, 0), 3), 1);
  EXPECT_FALSE(deterministic_parity(uniform_table(2), 0).has_value());
}

}  // namespace
}  // namespace prbox
