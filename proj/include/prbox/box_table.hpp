#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prbox/dyadic.hpp"
#include "prbox/tensor.hpp"

namespace prbox {

/// Conditional probability table P(a⃗|x⃗) of an N-party box with binary
/// inputs and outputs.
///
/// Input and output strings are packed into integers with party 0 as the
/// most significant bit, so the string "01" is party 0 -> 0, party 1 -> 1.
/// The table itself does not enforce the box invariants; use
/// `check_box_invariants` to validate.
class BoxTable {
 public:
  /// All-zero table.
  explicit BoxTable(int n_parties);

  int n_parties() const { return n_parties_; }
  std::size_t n_strings() const { return std::size_t{1} << n_parties_; }

  const Dyadic& prob(unsigned outputs, unsigned inputs) const;
  void set(unsigned outputs, unsigned inputs, Dyadic p);

  /// Output bit of `party` inside a packed string.
  int bit(unsigned packed, int party) const { return (packed >> (n_parties_ - 1 - party)) & 1U; }

  friend bool operator==(const BoxTable&, const BoxTable&) = default;
  friend auto operator<=>(const BoxTable& lhs, const BoxTable& rhs) {
    return std::lexicographical_compare_three_way(lhs.probs_.begin(), lhs.probs_.end(),
                                                  rhs.probs_.begin(), rhs.probs_.end());
  }

 private:
  int n_parties_;
  std::vector<Dyadic> probs_;  // index inputs * 2^N + outputs
};

std::string bitstring(unsigned packed, int width);
unsigned parse_bitstring(const std::string& text, int width);

struct InvariantReport {
  bool ok = true;
  /// Name of the first violated invariant: "nonnegative", "normalized" or
  /// "no_signalling".
  std::string violated;
  std::string detail;
};

InvariantReport check_box_invariants(const BoxTable& table);
bool is_no_signalling(const BoxTable& table);

/// Maps each (input x, outcome a) of one party to the extremal effect b^(i)
/// measured, i in {0..3}. The two effects of an input must sum to e, and the
/// two inputs must use different tests, otherwise the four fiducial effects
/// would not span R^3.
///
/// Valid conventions are numbered 0..7: bit 2 selects which test input 0
/// uses ({b0,b2} or {b3,b1}), bits 1 and 0 flip the outcome labels of input
/// 0 and input 1.
class FiducialConvention {
 public:
  /// Default: x=0 -> {a=0: b0, a=1: b2}; x=1 -> {a=0: b3, a=1: b1}.
  FiducialConvention() : FiducialConvention(from_id(0)) {}
  explicit FiducialConvention(std::array<std::array<int, 2>, 2> outcome_effect);

  static FiducialConvention from_id(int id);
  /// The labelling under which the closed-form discrimination
  /// effects (b^(3(1-x)) ⊗ ..., and the tripartite 4-term sum) work.
  static FiducialConvention closed_form_aligned() { return from_id(4); }

  int effect_index(int input, int outcome) const;
  int id() const;

  friend bool operator==(const FiducialConvention&, const FiducialConvention&) = default;

 private:
  std::array<std::array<int, 2>, 2> outcome_effect_;
};

/// P(a⃗|x⃗) = pair(⊗_k b^(conv(x_k, a_k)), state).
BoxTable state_to_table(const GptTensor& state, const FiducialConvention& conv = {});

/// Fiducial tomography: the unique state whose table under `conv` is
/// `table`. Signalling tables have no such state and raise kSignalling;
/// negative or unnormalized tables raise kInvalidTable.
GptTensor table_to_state(const BoxTable& table, const FiducialConvention& conv = {});

/// Σ over the four input pairs of Pr(a ⊕ b = x·y); bipartite tables only.
Dyadic chsh_value(const BoxTable& table);

/// Global output parity at a packed input, if every supported output string
/// has the same parity.
std::optional<int> deterministic_parity(const BoxTable& table, unsigned inputs);

// Catalog tables.

/// p_{αβ}(a|x) = [a = αx ⊕ β].
BoxTable box_table_single(int alpha, int beta);
/// a = αx ⊕ β, b = γy ⊕ δ.
BoxTable box_table_local(int alpha, int beta, int gamma, int delta);
/// P(a,b|x,y) = 1/2 iff a ⊕ b = xy ⊕ αx ⊕ βy ⊕ γ.
BoxTable box_table_nonlocal(int alpha, int beta, int gamma);
/// Tripartite parity boxes, 1/4 on a ⊕ b ⊕ c = f(x,y,z) with f = xyz (44),
/// xy ⊕ xz (45) or xy ⊕ xz ⊕ yz (46).
BoxTable tripartite_class_table(int class_id);
/// Every entry 1/2^N.
BoxTable uniform_table(int n_parties);

}  // namespace prbox
