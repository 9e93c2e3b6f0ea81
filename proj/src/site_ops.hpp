#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "prbox/dyadic.hpp"

namespace prbox::detail {

using Mat3 = std::array<std::array<Dyadic, 3>, 3>;

/// Multiplies `mat` into the local index of `axis` of a dense 3^n tensor.
inline void apply_on_axis(std::vector<Dyadic>& data, int n, int axis, const Mat3& mat) {
  std::size_t stride = 1;
  for (int p = n - 1; p > axis; --p) stride *= 3;
  const std::size_t block = stride * 3;
  for (std::size_t base = 0; base < data.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::array<Dyadic, 3> in = {data[base + off], data[base + stride + off],
                                        data[base + 2 * stride + off]};
      for (std::size_t r = 0; r < 3; ++r) {
        Dyadic acc;
        for (std::size_t c = 0; c < 3; ++c) {
          if (!mat[r][c].is_zero() && !in[c].is_zero()) acc += mat[r][c] * in[c];
        }
        data[base + r * stride + off] = acc;
      }
    }
  }
}

}  // namespace prbox::detail
