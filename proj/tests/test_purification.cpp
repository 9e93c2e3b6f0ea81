#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "prbox/catalog.hpp"
#include "prbox/error.hpp"
#include "prbox/purification.hpp"

namespace prbox {
namespace {

TEST(Purification, CatalogPurity) {
  for (int n = 0; n < 4; ++n) EXPECT_TRUE(is_catalog_pure(pure_state(n)));
  for (int n = 0; n < 24; ++n) EXPECT_TRUE(is_catalog_pure(bipartite_state(n)));
  for (int c : {44, 45, 46}) EXPECT_TRUE(is_catalog_pure(tripartite_class_state(c)));
  EXPECT_TRUE(is_catalog_pure(tensor_product(bipartite_state(16), pure_state(0))));
  EXPECT_TRUE(is_catalog_pure(tensor_power(pure_state(3), 3)));
  EXPECT_FALSE(is_catalog_pure(maximally_mixed(1)));
  EXPECT_FALSE(is_catalog_pure(maximally_mixed(2)));
  EXPECT_FALSE(is_catalog_pure(tensor_power(pure_state(0), 4)));
}

TEST(Purification, IsPurification) {
  EXPECT_TRUE(is_purification(bipartite_state(20), maximally_mixed(1), {0}));
  EXPECT_TRUE(is_purification(bipartite_state(20), maximally_mixed(1), {1}));
  EXPECT_FALSE(is_purification(bipartite_state(1), maximally_mixed(1), {0}));
  EXPECT_TRUE(is_purification(bipartite_state(1), pure_state(0), {0}));
  EXPECT_THROW(is_purification(bipartite_state(1), pure_state(0), {0, 1}), Error);
}

TEST(Purification, MuInBipartiteCatalog) {
  const auto r = find_purifications(maximally_mixed(1), PurificationCatalog::kBipartite24);
  std::set<std::string> ids;
  for (const auto& p : r.purifications) ids.insert(p.id);
  std::set<std::string> want;
  for (int n = 16; n < 24; ++n) want.insert("Omega" + std::to_string(n));
  EXPECT_EQ(ids, want);
  EXPECT_TRUE(r.unique_up_to_local);
  for (const auto& w : r.witnesses) {
    ASSERT_TRUE(w.transform.has_value());
    EXPECT_TRUE(w.transform->supported_on({1}));
    EXPECT_EQ(apply(*w.transform, r.purifications[w.from].state), r.purifications[w.to].state);
  }
}

TEST(Purification, MuIsTheOnlyInternalMarginal) {
  const auto margins = single_site_marginals(PurificationCatalog::kBipartite24);
  std::vector<GptTensor> internal;
  for (const auto& m : margins) {
    const auto v = oracle::to_vec(m);
    if (std::abs(v[0]) + std::abs(v[1]) < 1) internal.push_back(m);
    EXPECT_EQ(is_internal_single(m), std::abs(v[0]) + std::abs(v[1]) < 1);
  }
  ASSERT_EQ(internal.size(), 1u);
  EXPECT_EQ(internal[0], maximally_mixed(1));
  const GptTensor inner(Role::kState, 1, {kQuarter, 0, 1});
  EXPECT_TRUE(find_purifications(inner, PurificationCatalog::kBipartite24).purifications.empty());
}

TEST(Purification, PureTargetsHaveProductPurifications) {
  const auto r = find_purifications(pure_state(2), PurificationCatalog::kBipartite24);
  EXPECT_EQ(r.purifications.size(), 4u);
  EXPECT_TRUE(r.unique_up_to_local);
}

TEST(Purification, TripartiteBreaksUniqueness) {
  const auto r = tripartite_uniqueness_counterexample();
  ASSERT_EQ(r.purifications.size(), 2u);
  for (const auto& p : r.purifications) {
    EXPECT_TRUE(is_purification(p.state, maximally_mixed(1), {0}));
    EXPECT_EQ(oracle::marginal(oracle::to_vec(p.state), 0b001), oracle::kMu);
  }
  EXPECT_FALSE(r.unique_up_to_local);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_FALSE(r.witnesses[0].transform.has_value());
  const auto wide = find_purifications(maximally_mixed(1), PurificationCatalog::kBipartite24PlusTripartite);
  EXPECT_EQ(wide.purifications.size(), 43u);
  EXPECT_FALSE(wide.unique_up_to_local);
}

}  // namespace
}  // namespace prbox
