#include "prbox/discrimination.hpp"

#include <set>

#include "prbox/catalog.hpp"
#include "prbox/error.hpp"
#include "prbox/validity.hpp"

namespace prbox {

namespace {

std::vector<std::vector<int>> terms_for_outputs(const BoxTable& table, unsigned inputs,
                                                const std::vector<unsigned>& outputs,
                                                const FiducialConvention& conv) {
  std::vector<std::vector<int>> terms;
  for (unsigned a : outputs) {
    std::vector<int> term;
    for (int k = 0; k < table.n_parties(); ++k) {
      term.push_back(conv.effect_index(table.bit(inputs, k), table.bit(a, k)));
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

int popcount_parity(unsigned v) { return __builtin_parity(v); }

bool has_all_parities(const BoxTable& table) {
  for (unsigned x = 0; x < table.n_strings(); ++x) {
    if (!deterministic_parity(table, x)) return false;
  }
  return true;
}

}  // namespace

TwoOutcomePovm TwoOutcomePovm::from_terms(std::vector<std::vector<int>> terms,
                                          const FiducialConvention& conv) {
  if (terms.empty()) throw Error(ErrorCode::kDegenerate, "POVM effect needs at least one term");
  GptTensor a = product_effect(terms.front());
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].size() != terms.front().size()) {
      throw Error(ErrorCode::kShapeMismatch, "POVM terms have different party counts");
    }
    a = a + product_effect(terms[i]);
  }
  GptTensor complement = deterministic_effect(a.n_parties()) - a;
  return {std::move(a), std::move(complement), std::move(terms), conv};
}

std::vector<SeparatingInput> separating_inputs(const BoxTable& first, const BoxTable& second) {
  if (first.n_parties() != second.n_parties()) {
    throw Error(ErrorCode::kShapeMismatch, "tables have different party counts");
  }
  std::vector<SeparatingInput> out;
  for (unsigned x = 0; x < first.n_strings(); ++x) {
    const auto p1 = deterministic_parity(first, x);
    const auto p2 = deterministic_parity(second, x);
    if (!p1 || !p2) {
      throw Error(ErrorCode::kNonDeterministicParity,
                  "no deterministic output parity at input " + bitstring(x, first.n_parties()));
    }
    if (*p1 != *p2) out.push_back({x, *p1, *p2});
  }
  return out;
}

std::optional<SeparatingInput> find_separating_input(const BoxTable& first,
                                                     const BoxTable& second) {
  auto all = separating_inputs(first, second);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<unsigned> find_disjoint_support_input(const BoxTable& first,
                                                    const BoxTable& second) {
  if (first.n_parties() != second.n_parties()) {
    throw Error(ErrorCode::kShapeMismatch, "tables have different party counts");
  }
  for (unsigned x = 0; x < first.n_strings(); ++x) {
    bool disjoint = true;
    for (unsigned a = 0; a < first.n_strings() && disjoint; ++a) {
      disjoint = first.prob(a, x).is_zero() || second.prob(a, x).is_zero();
    }
    if (disjoint) return x;
  }
  return std::nullopt;
}

TwoOutcomePovm discriminating_povm(const GptTensor& first, const GptTensor& second,
                                   const FiducialConvention& conv) {
  if (first.n_parties() != second.n_parties()) {
    throw Error(ErrorCode::kShapeMismatch, "states have different party counts");
  }
  if (first == second) throw Error(ErrorCode::kIdenticalStates, "states are identical");
  const BoxTable t1 = state_to_table(first, conv);
  const BoxTable t2 = state_to_table(second, conv);

  if (has_all_parities(t1) && has_all_parities(t2)) {
    if (auto sep = find_separating_input(t1, t2)) {
      std::vector<unsigned> outputs;
      for (unsigned a = 0; a < t1.n_strings(); ++a) {
        if (popcount_parity(a) == sep->parity_first) outputs.push_back(a);
      }
      return TwoOutcomePovm::from_terms(terms_for_outputs(t1, sep->inputs, outputs, conv), conv);
    }
  }
  if (auto x = find_disjoint_support_input(t1, t2)) {
    std::vector<unsigned> outputs;
    for (unsigned a = 0; a < t1.n_strings(); ++a) {
      if (!t1.prob(a, *x).is_zero()) outputs.push_back(a);
    }
    return TwoOutcomePovm::from_terms(terms_for_outputs(t1, *x, outputs, conv), conv);
  }
  throw Error(ErrorCode::kNoSeparatingInput, "no input separates the two states");
}

bool verify_perfect_discrimination(const TwoOutcomePovm& povm, const GptTensor& first,
                                   const GptTensor& second) {
  if (povm.a.n_parties() != first.n_parties() || first.n_parties() != second.n_parties()) {
    return false;
  }
  const Dyadic p1 = pair(povm.a, first);
  const Dyadic p2 = pair(povm.a, second);
  return (p1 == Dyadic(1) && p2.is_zero()) || (p1.is_zero() && p2 == Dyadic(1));
}

TwoOutcomePovm closed_form_bipartite_povm(int x, int y) {
  if ((x != 0 && x != 1) || (y != 0 && y != 1)) {
    throw Error(ErrorCode::kOutOfRange, "inputs must be bits");
  }
  return TwoOutcomePovm::from_terms({{3 * (1 - x), 3 * (1 - y)}, {1 + x, 1 + y}},
                                    FiducialConvention::closed_form_aligned());
}

TwoOutcomePovm closed_form_tripartite_povm() {
  return TwoOutcomePovm::from_terms({{0, 3, 0}, {0, 1, 2}, {2, 1, 0}, {2, 3, 2}},
                                    FiducialConvention::closed_form_aligned());
}

ExhaustiveDiscrimination exhaustive_bipartite_discrimination(const GptTensor& first,
                                                             const GptTensor& second) {
  if (first.n_parties() != 2 || second.n_parties() != 2) {
    throw Error(ErrorCode::kUnsupported, "exhaustive search is bipartite only");
  }
  std::vector<GptTensor> products;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) products.push_back(product_effect({i, j}));
  }
  // Probes: the 24 extremal states for validity, then the two targets.
  std::vector<GptTensor> probes = extremal_states(2);
  probes.push_back(first);
  probes.push_back(second);
  std::vector<std::vector<Dyadic>> contrib(products.size());
  for (std::size_t t = 0; t < products.size(); ++t) {
    for (const auto& s : probes) contrib[t].push_back(pair(products[t], s));
  }

  ExhaustiveDiscrimination out;
  std::set<GptTensor> found;
  std::vector<Dyadic> sums(probes.size());
  unsigned subset = 0;
  const unsigned count = 1U << products.size();
  // Gray-code walk: one term toggles per step.
  for (unsigned step = 1; step < count; ++step) {
    const unsigned bit = static_cast<unsigned>(__builtin_ctz(step));
    subset ^= 1U << bit;
    const bool added = (subset >> bit) & 1U;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      if (added) {
        sums[p] += contrib[bit][p];
      } else {
        sums[p] -= contrib[bit][p];
      }
    }
    ++out.subsets_checked;
    if (sums[24] != Dyadic(1) || !sums[25].is_zero()) continue;
    bool valid = true;
    for (std::size_t p = 0; p < 24 && valid; ++p) valid = sums[p].sign() >= 0 && sums[p] <= Dyadic(1);
    if (!valid) continue;
    std::vector<GptTensor> chosen;
    for (unsigned t = 0; t < products.size(); ++t) {
      if ((subset >> t) & 1U) chosen.push_back(products[t]);
    }
    GptTensor a = chosen.front();
    for (std::size_t t = 1; t < chosen.size(); ++t) a = a + chosen[t];
    if (found.insert(a).second) out.discriminating_effects.push_back(std::move(a));
  }
  ++out.subsets_checked;  // the empty subset, which cannot pair to 1

  std::set<GptTensor> single_input;
  constexpr int kTests[2][2] = {{0, 2}, {3, 1}};
  for (const auto& ta : kTests) {
    for (const auto& tb : kTests) {
      // The full set gives e ⊗ e, which never discriminates.
      for (unsigned mask = 1; mask < 15; ++mask) {
        std::vector<std::vector<int>> terms;
        for (unsigned o = 0; o < 4; ++o) {
          if ((mask >> o) & 1U) terms.push_back({ta[o >> 1], tb[o & 1]});
        }
        single_input.insert(TwoOutcomePovm::from_terms(terms).a);
      }
    }
  }
  for (const auto& a : out.discriminating_effects) {
    if (single_input.count(a) != 0) ++out.single_input_effects;
  }
  return out;
}

}  // namespace prbox
