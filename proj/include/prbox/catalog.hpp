#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prbox/box_table.hpp"
#include "prbox/tensor.hpp"

namespace prbox {

/// ω_0..ω_3, the vertices of the single-site square.
GptTensor pure_state(int n);
/// b^(0)..b^(3).
GptTensor extremal_effect(int i);
/// e^{⊗N} with e = (0,0,1).
GptTensor deterministic_effect(int n_parties);
/// μ^{⊗N} with μ = (0,0,1).
GptTensor maximally_mixed(int n_parties);
/// Ω_0..Ω_23: n < 16 is ω_{n/4} ⊗ ω_{n%4}, n >= 16 the non-local vertices.
GptTensor bipartite_state(int n);
/// b^(i_0) ⊗ b^(i_1) ⊗ ...
GptTensor product_effect(const std::vector<int>& indices);
/// State of a tripartite class representative (44, 45, 46) under `conv`.
GptTensor tripartite_class_state(int class_id, const FiducialConvention& conv = {});

/// n = 15 + [(3 + 3α + 4β + 6γ) mod 8], kept for comparison only.
int closed_form_nonlocal_index(int alpha, int beta, int gamma);

/// Catalog index n ∈ 16..23 whose table under `conv` is p_{αβγ}, found by
/// matching tables. Indexed by 4α + 2β + γ.
std::array<int, 8> nonlocal_index_lookup(const FiducialConvention& conv = {});

/// Single-site counterpart: entry 2α + β is the n with table(ω_n) = p_{αβ}.
std::array<int, 4> single_index_lookup(const FiducialConvention& conv = {});

struct CatalogEntry {
  std::string id;  // "omega0", "b2", "e", "mu", "Omega17", "class44", ...
  GptTensor tensor;
  std::string description;
};

/// Every named object: ω's, b's, e, μ, Ω_0..Ω_23, class 44/45/46.
std::vector<CatalogEntry> catalog_entries(const FiducialConvention& conv = {});
std::optional<CatalogEntry> find_catalog_entry(const std::string& id,
                                               const FiducialConvention& conv = {});

/// Catalog id of an N ≤ 2 pure state ("omega2", "Omega18"), if any.
std::optional<std::string> catalog_id_of(const GptTensor& state);

}  // namespace prbox
