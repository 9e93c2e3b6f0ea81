#include "prbox/validity.hpp"

#include "prbox/catalog.hpp"
#include "prbox/error.hpp"

namespace prbox {

namespace {

std::string indices_label(const std::vector<int>& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0) out += "⊗";
    out += "b" + std::to_string(idx[k]);
  }
  return out;
}

}  // namespace

Validity is_valid_state(const GptTensor& state) {
  if (state.role() != Role::kState) {
    throw Error(ErrorCode::kRoleMismatch, "is_valid_state expects a state");
  }
  const int n = state.n_parties();
  if (n > 3) throw Error(ErrorCode::kUnsupported, "state validity is checked for N <= 3");
  if (pair(deterministic_effect(n), state) != Dyadic(1)) {
    return {false, "not normalized"};
  }
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  std::size_t combos = std::size_t{1} << (2 * n);
  for (std::size_t c = 0; c < combos; ++c) {
    for (int k = 0; k < n; ++k) idx[static_cast<std::size_t>(k)] = static_cast<int>((c >> (2 * (n - 1 - k))) & 3U);
    const Dyadic p = pair(product_effect(idx), state);
    if (p.sign() < 0) {
      return {false, indices_label(idx) + " gives " + p.to_string()};
    }
  }
  return {};
}

std::vector<GptTensor> extremal_states(int n_parties) {
  std::vector<GptTensor> out;
  if (n_parties == 1) {
    for (int n = 0; n < 4; ++n) out.push_back(pure_state(n));
  } else if (n_parties == 2) {
    for (int n = 0; n < 24; ++n) out.push_back(bipartite_state(n));
  } else {
    throw Error(ErrorCode::kUnsupported, "extremal states are catalogued for N <= 2 only");
  }
  return out;
}

Validity is_valid_effect(const GptTensor& effect) {
  if (effect.role() != Role::kEffect) {
    throw Error(ErrorCode::kRoleMismatch, "is_valid_effect expects an effect");
  }
  if (effect.n_parties() > 2) {
    throw Error(ErrorCode::kUnsupported, "effect validity is checked for N <= 2");
  }
  const auto states = extremal_states(effect.n_parties());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Dyadic p = pair(effect, states[i]);
    if (p.sign() < 0 || p > Dyadic(1)) {
      const std::string name = effect.n_parties() == 1 ? "omega" : "Omega";
      return {false, name + std::to_string(i) + " gives " + p.to_string()};
    }
  }
  return {};
}

}  // namespace prbox
