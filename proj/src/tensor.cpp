#include "prbox/tensor.hpp"

#include <algorithm>
#include <sstream>

#include "prbox/error.hpp"

namespace prbox {

namespace {

constexpr int kMaxParties = 12;

void require_same_shape(const GptTensor& lhs, const GptTensor& rhs, const char* op) {
  if (lhs.n_parties() != rhs.n_parties()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(op) + ": party counts " + std::to_string(lhs.n_parties()) +
                    " and " + std::to_string(rhs.n_parties()) + " differ");
  }
}

void require_same_role(const GptTensor& lhs, const GptTensor& rhs, const char* op) {
  if (lhs.role() != rhs.role()) {
    throw Error(ErrorCode::kRoleMismatch, std::string(op) + ": mixing a state and an effect");
  }
}

}  // namespace

std::string to_string(Role role) { return role == Role::kState ? "state" : "effect"; }

std::size_t tensor_size(int n_parties) {
  std::size_t size = 1;
  for (int i = 0; i < n_parties; ++i) size *= 3;
  return size;
}

GptTensor::GptTensor(Role role, int n_parties, std::vector<Dyadic> entries)
    : role_(role), n_parties_(n_parties), entries_(std::move(entries)) {
  if (n_parties < 1) {
    throw Error(ErrorCode::kDegenerate, "a tensor needs at least one party");
  }
  if (n_parties > kMaxParties) {
    throw Error(ErrorCode::kGuardExceeded, "tensor party count above " +
                                               std::to_string(kMaxParties));
  }
  if (entries_.size() != tensor_size(n_parties)) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(tensor_size(n_parties)) + " entries, got " +
                    std::to_string(entries_.size()));
  }
  if (std::all_of(entries_.begin(), entries_.end(), [](const Dyadic& d) { return d.is_zero(); })) {
    throw Error(ErrorCode::kDegenerate, "zero tensor");
  }
  // The all-2 index pairs with e^{⊗N}; a normalized state has a 1 there.
  if (role_ == Role::kState && entries_.back() != Dyadic(1)) {
    throw Error(ErrorCode::kNotNormalized,
                "state is not normalized: deterministic effect gives " +
                    entries_.back().to_string());
  }
}

GptTensor::GptTensor(Role role, std::initializer_list<Dyadic> entries)
    : GptTensor(role, [&] {
        int n = 0;
        std::size_t size = entries.size();
        while (size > 1 && size % 3 == 0) {
          size /= 3;
          ++n;
        }
        if (size != 1) throw Error(ErrorCode::kShapeMismatch, "entry count is not a power of 3");
        return n;
      }(), std::vector<Dyadic>(entries)) {}

const Dyadic& GptTensor::at(std::span<const int> multi_index) const {
  if (static_cast<int>(multi_index.size()) != n_parties_) {
    throw Error(ErrorCode::kShapeMismatch, "multi-index has the wrong length");
  }
  std::size_t flat = 0;
  for (int i : multi_index) {
    if (i < 0 || i > 2) throw Error(ErrorCode::kOutOfRange, "local index outside {0,1,2}");
    flat = flat * 3 + static_cast<std::size_t>(i);
  }
  return entries_[flat];
}

std::strong_ordering operator<=>(const GptTensor& lhs, const GptTensor& rhs) {
  if (auto c = static_cast<int>(lhs.role_) <=> static_cast<int>(rhs.role_); c != 0) return c;
  if (auto c = lhs.n_parties_ <=> rhs.n_parties_; c != 0) return c;
  return std::lexicographical_compare_three_way(lhs.entries_.begin(), lhs.entries_.end(),
                                                rhs.entries_.begin(), rhs.entries_.end());
}

Dyadic pair(const GptTensor& effect, const GptTensor& state) {
  require_same_shape(effect, state, "pair");
  if (effect.role() != Role::kEffect || state.role() != Role::kState) {
    throw Error(ErrorCode::kRoleMismatch, "pair expects (effect, state)");
  }
  Dyadic sum;
  for (std::size_t i = 0; i < effect.entries().size(); ++i) {
    if (effect[i].is_zero() || state[i].is_zero()) continue;
    sum += effect[i] * state[i];
  }
  return sum;
}

GptTensor tensor_product(const GptTensor& lhs, const GptTensor& rhs) {
  require_same_role(lhs, rhs, "tensor_product");
  std::vector<Dyadic> out;
  out.reserve(lhs.entries().size() * rhs.entries().size());
  for (const Dyadic& l : lhs.entries()) {
    for (const Dyadic& r : rhs.entries()) out.push_back(l * r);
  }
  return GptTensor(lhs.role(), lhs.n_parties() + rhs.n_parties(), std::move(out));
}

GptTensor tensor_power(const GptTensor& base, int n) {
  if (n < 1) throw Error(ErrorCode::kDegenerate, "tensor power needs n >= 1");
  GptTensor out = base;
  for (int i = 1; i < n; ++i) out = tensor_product(out, base);
  return out;
}

GptTensor marginalize(const GptTensor& state, std::span<const int> discard) {
  const int n = state.n_parties();
  std::vector<bool> dropped(static_cast<std::size_t>(n), false);
  for (int p : discard) {
    if (p < 0 || p >= n) throw Error(ErrorCode::kOutOfRange, "discarded party out of range");
    dropped[static_cast<std::size_t>(p)] = true;
  }
  const int kept = static_cast<int>(std::count(dropped.begin(), dropped.end(), false));
  if (kept == 0) {
    throw Error(ErrorCode::kUnsupported, "discarding every party leaves a scalar");
  }
  if (kept == n) return state;

  // e = (0,0,1) picks local index 2 on every discarded party.
  std::vector<Dyadic> out(tensor_size(kept));
  std::vector<int> index(static_cast<std::size_t>(n), 0);
  for (std::size_t flat = 0; flat < state.entries().size(); ++flat) {
    std::size_t rem = flat;
    for (int p = n - 1; p >= 0; --p) {
      index[static_cast<std::size_t>(p)] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    bool on_e = true;
    std::size_t out_flat = 0;
    for (int p = 0; p < n; ++p) {
      const int i = index[static_cast<std::size_t>(p)];
      if (dropped[static_cast<std::size_t>(p)]) {
        on_e = on_e && i == 2;
      } else {
        out_flat = out_flat * 3 + static_cast<std::size_t>(i);
      }
    }
    if (on_e) out[out_flat] = state[flat];
  }
  return GptTensor(state.role(), kept, std::move(out));
}

GptTensor linear_combination(std::span<const Dyadic> weights,
                             std::span<const GptTensor> tensors) {
  if (weights.size() != tensors.size() || tensors.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "weights and tensors must pair up");
  }
  std::vector<Dyadic> out(tensors.front().entries().size());
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    require_same_shape(tensors.front(), tensors[t], "linear_combination");
    require_same_role(tensors.front(), tensors[t], "linear_combination");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[t] * tensors[t][i];
  }
  return GptTensor(tensors.front().role(), tensors.front().n_parties(), std::move(out));
}

GptTensor operator+(const GptTensor& lhs, const GptTensor& rhs) {
  const Dyadic w[] = {Dyadic(1), Dyadic(1)};
  const GptTensor t[] = {lhs, rhs};
  return linear_combination(w, t);
}

GptTensor operator-(const GptTensor& lhs, const GptTensor& rhs) {
  const Dyadic w[] = {Dyadic(1), Dyadic(-1)};
  const GptTensor t[] = {lhs, rhs};
  return linear_combination(w, t);
}

GptTensor operator*(const Dyadic& scale, const GptTensor& tensor) {
  const Dyadic w[] = {scale};
  const GptTensor t[] = {tensor};
  return linear_combination(w, t);
}

std::string format_tensor(const GptTensor& tensor) {
  std::ostringstream os;
  const auto entries = tensor.entries();
  if (tensor.n_parties() == 1) {
    os << "(" << entries[0] << ", " << entries[1] << ", " << entries[2] << ")";
    return os.str();
  }
  // Rows over party 0, columns over the remaining parties flattened.
  const std::size_t cols = entries.size() / 3;
  for (std::size_t r = 0; r < 3; ++r) {
    os << (r == 0 ? "[" : " ") << "[";
    for (std::size_t c = 0; c < cols; ++c) {
      if (c > 0) os << ", ";
      os << entries[r * cols + c];
    }
    os << "]" << (r == 2 ? "]" : "\n");
  }
  return os.str();
}

}  // namespace prbox
