#pragma once

#include <string>
#include <vector>

#include "prbox/tensor.hpp"

namespace prbox {

struct Validity {
  bool valid = true;
  std::string diagnostic;  // names the violated effect or state when invalid

  explicit operator bool() const { return valid; }
};

/// Normalized and nonnegative on all 4^N factorized extremal effects, which
/// are the only extremal effects of the theory. N ≤ 3.
Validity is_valid_state(const GptTensor& state);

/// Pairing with every extremal state lies in [0, 1]. N ≤ 2 only, since the
/// extremal states are only catalogued up to two parties.
Validity is_valid_effect(const GptTensor& effect);

/// Extremal states of an N ≤ 2 system: the four ω or the 24 Ω.
std::vector<GptTensor> extremal_states(int n_parties);

}  // namespace prbox
