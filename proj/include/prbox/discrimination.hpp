#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "prbox/box_table.hpp"
#include "prbox/tensor.hpp"

namespace prbox {

/// Two-outcome measurement {a, e^{⊗N} − a} with `a` a sum of factorized
/// extremal effects. Each term lists one b^(i) index per site.
struct TwoOutcomePovm {
  GptTensor a;
  GptTensor complement;
  std::vector<std::vector<int>> terms;
  FiducialConvention convention;

  static TwoOutcomePovm from_terms(std::vector<std::vector<int>> terms,
                                   const FiducialConvention& conv = {});
};

struct SeparatingInput {
  unsigned inputs = 0;  // packed, party 0 most significant
  int parity_first = 0;
  int parity_second = 0;
};

/// Every input at which both tables have a deterministic global output parity
/// and the parities differ, in increasing packed order. Raises
/// kNonDeterministicParity when either table has no deterministic parity at
/// some input.
std::vector<SeparatingInput> separating_inputs(const BoxTable& first, const BoxTable& second);
/// First element of `separating_inputs`, or nullopt.
std::optional<SeparatingInput> find_separating_input(const BoxTable& first,
                                                     const BoxTable& second);

/// First input at which the output supports of the two tables are disjoint.
/// Covers product pairs such as ω0⊗ω0 vs ω2⊗ω2, whose parities agree at
/// every input.
std::optional<unsigned> find_disjoint_support_input(const BoxTable& first,
                                                    const BoxTable& second);

/// Effect a with pair(a, first) = 1 and pair(a, second) = 0.
///
/// At the first parity-separating input x, a sums ⊗_k b^(conv(x_k, a_k))
/// over the output strings with the first state's parity. When the parities
/// never separate, a sums over the first state's support at the first input
/// where the supports are disjoint. Raises kIdenticalStates for equal states
/// and kNoSeparatingInput when neither route applies.
TwoOutcomePovm discriminating_povm(const GptTensor& first, const GptTensor& second,
                                   const FiducialConvention& conv = {});

/// pair(a, first) = 1 and pair(a, second) = 0, or the same with roles swapped.
bool verify_perfect_discrimination(const TwoOutcomePovm& povm, const GptTensor& first,
                                   const GptTensor& second);

/// a = b^(3(1−x)) ⊗ b^(3(1−y)) + b^(1+x) ⊗ b^(1+y). Under the closed-form-aligned
/// convention this is the parity-0 effect at input (x, y).
TwoOutcomePovm closed_form_bipartite_povm(int x, int y);

/// b0⊗b3⊗b0 + b0⊗b1⊗b2 + b2⊗b1⊗b0 + b2⊗b3⊗b2, the four-term class-44 vs
/// class-45 effect, under the closed-form-aligned convention.
TwoOutcomePovm closed_form_tripartite_povm();

struct ExhaustiveDiscrimination {
  std::size_t subsets_checked = 0;
  /// Distinct effects a = Σ_{(i,j) ∈ S} b^(i) ⊗ b^(j), S ⊆ all 16 products,
  /// with {a, e − a} valid and pairings (1, 0).
  std::vector<GptTensor> discriminating_effects;
  /// How many of those coarse-grain the outcomes of one pair of tests, one
  /// of {b0, b2} or {b1, b3} per site.
  std::size_t single_input_effects = 0;
};

/// Search over all 2^16 subset sums of bipartite product effects.
ExhaustiveDiscrimination exhaustive_bipartite_discrimination(const GptTensor& first,
                                                             const GptTensor& second);

}  // namespace prbox
