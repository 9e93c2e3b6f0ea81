#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "prbox/catalog.hpp"
#include "prbox/error.hpp"
#include "prbox/validity.hpp"

namespace prbox {
namespace {

TEST(Tensor, ConstructionChecks) {
  EXPECT_THROW(GptTensor(Role::kState, 1, {0, 0, 0}), Error);
  EXPECT_THROW(GptTensor(Role::kState, 1, {1, 0, 2}), Error);
  EXPECT_THROW(GptTensor(Role::kState, 2, {1, 0, 1}), Error);
  EXPECT_NO_THROW(GptTensor(Role::kEffect, 1, {1, 0, 2}));
  try {
    GptTensor(Role::kState, 1, {1, 0, 2});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotNormalized);
  }
}

TEST(Tensor, PairMatchesOracle) {
  for (int i = 0; i < 4; ++i) {
    for (int n = 0; n < 4; ++n) {
      EXPECT_EQ(pair(extremal_effect(i), pure_state(n)).to_double(),
                oracle::dot(oracle::kB[i], oracle::kOmega[n]));
    }
  }
  EXPECT_THROW(pair(pure_state(0), pure_state(0)), Error);
}

TEST(Tensor, ProductAndMarginal) {
  for (int n = 0; n < 24; ++n) {
    EXPECT_EQ(oracle::to_vec(bipartite_state(n)), oracle::bipartite(n)) << n;
  }
  const GptTensor s = tensor_product(pure_state(1), bipartite_state(18));
  const std::vector<int> drop0 = {0};
  const std::vector<int> drop12 = {1, 2};
  EXPECT_EQ(marginalize(s, drop0), bipartite_state(18));
  EXPECT_EQ(marginalize(s, drop12), pure_state(1));
  EXPECT_EQ(oracle::to_vec(marginalize(s, drop0)), oracle::marginal(oracle::to_vec(s), 0b110));
  const std::vector<int> all = {0, 1, 2};
  EXPECT_THROW(marginalize(s, all), Error);
  EXPECT_EQ(tensor_power(pure_state(0), 3).n_parties(), 3);
}

TEST(Catalog, MatchesLiteralVectors) {
  for (int n = 0; n < 4; ++n) EXPECT_EQ(oracle::to_vec(pure_state(n)), oracle::kOmega[n]);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(oracle::to_vec(extremal_effect(i)), oracle::kB[i]);
  EXPECT_EQ(oracle::to_vec(deterministic_effect(1)), oracle::kE);
  EXPECT_EQ(oracle::to_vec(maximally_mixed(1)), oracle::kMu);
  for (int n = 16; n < 24; ++n) {
    EXPECT_EQ(oracle::to_vec(bipartite_state(n)), oracle::kNonLocal[n - 16]) << n;
  }
  EXPECT_THROW(bipartite_state(24), Error);
  EXPECT_THROW(pure_state(4), Error);
}

TEST(Catalog, EntriesAndLookup) {
  const auto entries = catalog_entries();
  std::set<std::string> ids;
  for (const auto& e : entries) ids.insert(e.id);
  EXPECT_EQ(ids.size(), entries.size());
  for (const char* id : {"omega0", "b3", "e", "mu", "Omega0", "Omega23", "class44", "class46"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
  EXPECT_EQ(catalog_id_of(bipartite_state(19)), "Omega19");
  EXPECT_EQ(catalog_id_of(pure_state(2)), "omega2");
  EXPECT_FALSE(catalog_id_of(maximally_mixed(1)).has_value());
  EXPECT_FALSE(find_catalog_entry("nope").has_value());
}

TEST(Catalog, NonlocalIndexFormulaDisagreesAtOnePoint) {
  // The closed form reaches 15 at (1,1,1), outside the non-local range.
  EXPECT_EQ(closed_form_nonlocal_index(1, 1, 1), 15);
  const auto lookup = nonlocal_index_lookup(FiducialConvention::closed_form_aligned());
  std::set<int> seen(lookup.begin(), lookup.end());
  EXPECT_EQ(seen, (std::set<int>{16, 17, 18, 19, 20, 21, 22, 23}));
}

TEST(Validity, CatalogAndCounterexamples) {
  for (const auto& s : extremal_states(1)) EXPECT_TRUE(is_valid_state(s));
  for (const auto& s : extremal_states(2)) EXPECT_TRUE(is_valid_state(s));
  EXPECT_EQ(extremal_states(2).size(), 24u);
  const GptTensor too_far(Role::kState, 1, {1, 1, 1});
  const Validity v = is_valid_state(too_far);
  EXPECT_FALSE(v);
  EXPECT_FALSE(v.diagnostic.empty());
  EXPECT_TRUE(is_valid_state(maximally_mixed(3)));
  EXPECT_TRUE(is_valid_effect(deterministic_effect(2)));
  const GptTensor bad_effect(Role::kEffect, 1, {1, 0, 1});
  EXPECT_FALSE(is_valid_effect(bad_effect));
  // Paired with PR boxes, a product of non-extremal effects can go negative.
  const GptTensor neg = Dyadic(-1) * tensor_product(extremal_effect(0), extremal_effect(0));
  EXPECT_FALSE(is_valid_effect(neg));
}

// Validity from an independent double oracle on random half-integer states.
TEST(Validity, RandomSingleSiteStatesMatchOracle) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int i = 0; i < 500; ++i) {
    const int s0 = d(rng), s1 = d(rng);
    const GptTensor s(Role::kState, 1, {Dyadic::from_parts(s0, 2), Dyadic::from_parts(s1, 2), 1});
    bool ok = true;
    for (const auto& b : oracle::kB) ok &= oracle::dot(b, oracle::to_vec(s)) >= 0;
    EXPECT_EQ(static_cast<bool>(is_valid_state(s)), ok) << s0 << "," << s1;
  }
}

}  // namespace
}  // namespace prbox
