#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "prbox/dyadic.hpp"

namespace prbox {

enum class Role { kState, kEffect };

std::string to_string(Role role);

/// Number of entries of an N-party tensor, 3^N.
std::size_t tensor_size(int n_parties);

/// Order-N real tensor over R^3 per site, stored dense in row-major order:
/// party 0 is the most significant index, each local index runs over
/// {0, 1, 2}. Local index 2 is the normalization coordinate.
///
/// Construction rejects N = 0, a wrong entry count, the all-zero tensor and
/// states that are not normalized.
class GptTensor {
 public:
  GptTensor(Role role, int n_parties, std::vector<Dyadic> entries);
  GptTensor(Role role, std::initializer_list<Dyadic> entries);

  Role role() const { return role_; }
  int n_parties() const { return n_parties_; }
  std::span<const Dyadic> entries() const { return entries_; }
  const Dyadic& operator[](std::size_t flat) const { return entries_[flat]; }
  const Dyadic& at(std::span<const int> multi_index) const;

  friend bool operator==(const GptTensor&, const GptTensor&) = default;
  /// Lexicographic over (role, N, entries); only used to keep sets ordered.
  friend std::strong_ordering operator<=>(const GptTensor& lhs, const GptTensor& rhs);

 private:
  Role role_;
  int n_parties_;
  std::vector<Dyadic> entries_;
};

/// Probability rule: full contraction of an effect with a state of the same
/// party count.
Dyadic pair(const GptTensor& effect, const GptTensor& state);

/// Kronecker product; the parties of `lhs` come first.
GptTensor tensor_product(const GptTensor& lhs, const GptTensor& rhs);
GptTensor tensor_power(const GptTensor& base, int n);

/// Contracts the deterministic effect onto every party in `discard`
/// (0-based). Discarding every party is rejected with kUnsupported since the
/// result would be the scalar 1.
GptTensor marginalize(const GptTensor& state, std::span<const int> discard);

/// Σ w_i t_i for states whose weights sum to one (stays normalized), or
/// arbitrary weights for effects.
GptTensor linear_combination(std::span<const Dyadic> weights,
                             std::span<const GptTensor> tensors);

GptTensor operator+(const GptTensor& lhs, const GptTensor& rhs);
GptTensor operator-(const GptTensor& lhs, const GptTensor& rhs);
GptTensor operator*(const Dyadic& scale, const GptTensor& tensor);

/// Human-readable rendering, nested by party: "(1, 0, 1)" or a matrix.
std::string format_tensor(const GptTensor& tensor);

}  // namespace prbox
