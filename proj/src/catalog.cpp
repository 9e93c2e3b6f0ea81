#include "prbox/catalog.hpp"

#include "prbox/error.hpp"

namespace prbox {

namespace {

const Dyadic kMinusHalf = -kHalf;

void require_index(int i, int lo, int hi, const char* what) {
  if (i < lo || i > hi) {
    throw Error(ErrorCode::kOutOfRange, std::string(what) + " index " + std::to_string(i) +
                                            " outside " + std::to_string(lo) + ".." +
                                            std::to_string(hi));
  }
}

GptTensor half_matrix(std::array<int, 4> upper_left) {
  // ½ [[u00, u01, 0], [u10, u11, 0], [0, 0, 2]]
  const auto h = [](int v) { return Dyadic(v).div_pow2(1); };
  return GptTensor(Role::kState, 2,
                   {h(upper_left[0]), h(upper_left[1]), Dyadic(), h(upper_left[2]),
                    h(upper_left[3]), Dyadic(), Dyadic(), Dyadic(), Dyadic(1)});
}

}  // namespace

GptTensor pure_state(int n) {
  require_index(n, 0, 3, "pure state");
  switch (n) {
    case 0: return GptTensor(Role::kState, {1, 0, 1});
    case 1: return GptTensor(Role::kState, {0, -1, 1});
    case 2: return GptTensor(Role::kState, {-1, 0, 1});
    default: return GptTensor(Role::kState, {0, 1, 1});
  }
}

GptTensor extremal_effect(int i) {
  require_index(i, 0, 3, "extremal effect");
  switch (i) {
    case 0: return GptTensor(Role::kEffect, {kHalf, kHalf, kHalf});
    case 1: return GptTensor(Role::kEffect, {kMinusHalf, kHalf, kHalf});
    case 2: return GptTensor(Role::kEffect, {kMinusHalf, kMinusHalf, kHalf});
    default: return GptTensor(Role::kEffect, {kHalf, kMinusHalf, kHalf});
  }
}

GptTensor deterministic_effect(int n_parties) {
  if (n_parties < 1) throw Error(ErrorCode::kDegenerate, "deterministic effect needs N >= 1");
  return tensor_power(GptTensor(Role::kEffect, {0, 0, 1}), n_parties);
}

GptTensor maximally_mixed(int n_parties) {
  if (n_parties < 1) throw Error(ErrorCode::kDegenerate, "maximally mixed state needs N >= 1");
  return tensor_power(GptTensor(Role::kState, {0, 0, 1}), n_parties);
}

GptTensor bipartite_state(int n) {
  require_index(n, 0, 23, "bipartite state");
  if (n < 16) return tensor_product(pure_state(n / 4), pure_state(n % 4));
  static const std::array<std::array<int, 4>, 8> kNonLocal = {{
      {-1, 1, 1, 1},
      {-1, -1, -1, 1},
      {1, -1, -1, -1},
      {-1, 1, -1, -1},
      {-1, -1, 1, -1},
      {1, -1, 1, 1},
      {1, 1, -1, 1},
      {1, 1, 1, -1},
  }};
  return half_matrix(kNonLocal[static_cast<std::size_t>(n - 16)]);
}

GptTensor product_effect(const std::vector<int>& indices) {
  if (indices.empty()) throw Error(ErrorCode::kDegenerate, "empty product effect");
  GptTensor out = extremal_effect(indices.front());
  for (std::size_t i = 1; i < indices.size(); ++i) {
    out = tensor_product(out, extremal_effect(indices[i]));
  }
  return out;
}

GptTensor tripartite_class_state(int class_id, const FiducialConvention& conv) {
  return table_to_state(tripartite_class_table(class_id), conv);
}

int closed_form_nonlocal_index(int alpha, int beta, int gamma) {
  return 15 + ((3 + 3 * alpha + 4 * beta + 6 * gamma) % 8);
}

std::array<int, 8> nonlocal_index_lookup(const FiducialConvention& conv) {
  std::array<int, 8> out{};
  out.fill(-1);
  for (int code = 0; code < 8; ++code) {
    const BoxTable target = box_table_nonlocal((code >> 2) & 1, (code >> 1) & 1, code & 1);
    for (int n = 16; n < 24; ++n) {
      if (state_to_table(bipartite_state(n), conv) == target) {
        out[static_cast<std::size_t>(code)] = n;
        break;
      }
    }
  }
  return out;
}

std::array<int, 4> single_index_lookup(const FiducialConvention& conv) {
  std::array<int, 4> out{};
  out.fill(-1);
  for (int code = 0; code < 4; ++code) {
    const BoxTable target = box_table_single((code >> 1) & 1, code & 1);
    for (int n = 0; n < 4; ++n) {
      if (state_to_table(pure_state(n), conv) == target) {
        out[static_cast<std::size_t>(code)] = n;
        break;
      }
    }
  }
  return out;
}

std::vector<CatalogEntry> catalog_entries(const FiducialConvention& conv) {
  std::vector<CatalogEntry> out;
  for (int n = 0; n < 4; ++n) {
    out.push_back({"omega" + std::to_string(n), pure_state(n), "single-site pure state"});
  }
  for (int i = 0; i < 4; ++i) {
    out.push_back({"b" + std::to_string(i), extremal_effect(i), "single-site extremal effect"});
  }
  out.push_back({"e", deterministic_effect(1), "deterministic effect"});
  out.push_back({"mu", maximally_mixed(1), "maximally mixed state"});
  for (int n = 0; n < 24; ++n) {
    out.push_back({"Omega" + std::to_string(n), bipartite_state(n),
                   n < 16 ? "bipartite local pure state" : "bipartite non-local pure state"});
  }
  out.push_back({"class44", tripartite_class_state(44, conv), "tripartite parity a+b+c = xyz"});
  out.push_back({"class45", tripartite_class_state(45, conv), "tripartite parity a+b+c = xy+xz"});
  out.push_back(
      {"class46", tripartite_class_state(46, conv), "tripartite parity a+b+c = xy+xz+yz"});
  return out;
}

std::optional<CatalogEntry> find_catalog_entry(const std::string& id,
                                               const FiducialConvention& conv) {
  for (auto& entry : catalog_entries(conv)) {
    if (entry.id == id) return entry;
  }
  return std::nullopt;
}

std::optional<std::string> catalog_id_of(const GptTensor& state) {
  if (state.role() != Role::kState) return std::nullopt;
  if (state.n_parties() == 1) {
    for (int n = 0; n < 4; ++n) {
      if (pure_state(n) == state) return "omega" + std::to_string(n);
    }
  } else if (state.n_parties() == 2) {
    for (int n = 0; n < 24; ++n) {
      if (bipartite_state(n) == state) return "Omega" + std::to_string(n);
    }
  }
  return std::nullopt;
}

}  // namespace prbox
