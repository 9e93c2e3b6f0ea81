#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prbox/catalog.hpp"
#include "prbox/discrimination.hpp"
#include "prbox/error.hpp"
#include "prbox/validity.hpp"

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

// Pairing through the oracle: expand the terms into a double vector.
double oracle_pair(const TwoOutcomePovm& povm, const GptTensor& state) {
  oracle::Vec a(oracle::to_vec(state).size(), 0.0);
  for (const auto& term : povm.terms) {
    oracle::Vec t = {1};
    for (int i : term) t = oracle::kron(t, oracle::kB[i]);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += t[k];
  }
  return oracle::dot(a, oracle::to_vec(state));
}

TEST(Discrimination, AllBipartitePairsEveryConvention) {
  for (int id = 0; id < 8; ++id) {
    const auto conv = FiducialConvention::from_id(id);
    for (int i = 0; i < 24; ++i) {
      for (int j = i + 1; j < 24; ++j) {
        const auto povm = discriminating_povm(bipartite_state(i), bipartite_state(j), conv);
        EXPECT_EQ(oracle_pair(povm, bipartite_state(i)), 1.0) << i << " " << j;
        EXPECT_EQ(oracle_pair(povm, bipartite_state(j)), 0.0) << i << " " << j;
        EXPECT_TRUE(is_valid_effect(povm.a));
        EXPECT_TRUE(is_valid_effect(povm.complement));
        EXPECT_EQ(povm.a + povm.complement, deterministic_effect(2));
      }
    }
  }
}

TEST(Discrimination, ProductPairNeedsSupportRoute) {
  const auto t0 = state_to_table(bipartite_state(0));
  const auto t10 = state_to_table(bipartite_state(10));
  EXPECT_FALSE(find_separating_input(t0, t10).has_value());
  EXPECT_TRUE(find_disjoint_support_input(t0, t10).has_value());
  const auto povm = discriminating_povm(bipartite_state(0), bipartite_state(10));
  EXPECT_TRUE(verify_perfect_discrimination(povm, bipartite_state(0), bipartite_state(10)));
}

TEST(Discrimination, Errors) {
  EXPECT_EQ(code_of([] { discriminating_povm(bipartite_state(3), bipartite_state(3)); }),
            ErrorCode::kIdenticalStates);
  const GptTensor mixed = maximally_mixed(2);
  EXPECT_EQ(code_of([&] { separating_inputs(state_to_table(mixed), state_to_table(bipartite_state(16))); }),
            ErrorCode::kNonDeterministicParity);
  EXPECT_EQ(code_of([&] { discriminating_povm(mixed, bipartite_state(16)); }),
            ErrorCode::kNoSeparatingInput);
  EXPECT_THROW(TwoOutcomePovm::from_terms({{0, 2}, {2, 0}, {0, 0}, {2, 2}}), Error);
}

TEST(Discrimination, ClosedFormBipartiteEffect) {
  const auto conv = FiducialConvention::closed_form_aligned();
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const auto povm = closed_form_bipartite_povm(x, y);
      ASSERT_EQ(povm.terms.size(), 2u);
      EXPECT_EQ(povm.terms[0], (std::vector<int>{3 * (1 - x), 3 * (1 - y)}));
      EXPECT_EQ(povm.terms[1], (std::vector<int>{1 + x, 1 + y}));
      // Parity-0 effect at input (x, y): 1 on boxes with xy⊕αx⊕βy⊕γ = 0.
      const auto lookup = nonlocal_index_lookup(conv);
      for (int code = 0; code < 8; ++code) {
        const int al = code >> 2, be = (code >> 1) & 1, ga = code & 1;
        const int parity = (x & y) ^ (al & x) ^ (be & y) ^ ga;
        EXPECT_EQ(oracle_pair(povm, bipartite_state(lookup[code])), parity == 0 ? 1.0 : 0.0);
      }
    }
  }
}

TEST(Discrimination, TripartiteFourTermStructure) {
  const auto conv = FiducialConvention::closed_form_aligned();
  const auto s44 = tripartite_class_state(44, conv);
  const auto s45 = tripartite_class_state(45, conv);
  const auto closed = closed_form_tripartite_povm();
  EXPECT_EQ(closed.terms, (std::vector<std::vector<int>>{{0, 3, 0}, {0, 1, 2}, {2, 1, 0}, {2, 3, 2}}));
  EXPECT_TRUE(verify_perfect_discrimination(closed, s44, s45));
  const auto found = discriminating_povm(s44, s45, conv);
  EXPECT_EQ(found.a, closed.a);
  EXPECT_TRUE(verify_perfect_discrimination(discriminating_povm(tripartite_class_state(44),
                                                                tripartite_class_state(45)),
                                            tripartite_class_state(44), tripartite_class_state(45)));
}

TEST(Discrimination, ExhaustiveBipartiteSearch) {
  const auto r = exhaustive_bipartite_discrimination(bipartite_state(16), bipartite_state(17));
  EXPECT_EQ(r.subsets_checked, 65536u);
  EXPECT_EQ(r.discriminating_effects.size(), 2u);
  EXPECT_EQ(r.single_input_effects, 2u);
  for (const auto& a : r.discriminating_effects) {
    EXPECT_EQ(pair(a, bipartite_state(16)), Dyadic(1));
    EXPECT_EQ(pair(a, bipartite_state(17)), Dyadic(0));
  }
  const auto p = exhaustive_bipartite_discrimination(bipartite_state(0), bipartite_state(10));
  EXPECT_EQ(p.discriminating_effects.size(), 20u);
  EXPECT_EQ(p.single_input_effects, 12u);
}

}  // namespace
}  // namespace prbox
