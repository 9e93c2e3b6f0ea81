#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prbox/box_table.hpp"
#include "prbox/tensor.hpp"
#include "prbox/transforms.hpp"

namespace prbox {

/// Membership in the explicit pure catalogs: the four ω (N=1), the 24 Ω
/// (N=2), and for N=3 the orbit under the full reversible group of the class
/// 44/45/46 representatives, Ω16⊗ω0 and ω0⊗ω0⊗ω0. Always false for N > 3.
bool is_catalog_pure(const GptTensor& state);

/// marginalize(candidate, complement of kept) == target. `kept` is a set of
/// 0-based sites of the candidate; its size must equal target's party count.
bool is_purification(const GptTensor& candidate, const GptTensor& target,
                     const std::vector<int>& kept);

enum class PurificationCatalog {
  kBipartite24,
  /// The 24 Ω, the 96 products Ω_n ⊗ ω_j, and the class 44/45/46 states.
  kBipartite24PlusTripartite,
};

struct NamedState {
  std::string id;
  GptTensor state;
};

std::vector<NamedState> pure_catalog(PurificationCatalog catalog,
                                     const FiducialConvention& conv = {});

struct Purification {
  std::string id;
  GptTensor state;
  std::vector<int> kept;
};

/// Connection attempt between two purifications with the same party count:
/// `transform` acts on the purifying sites and maps purification `from` to
/// purification `to`, or is empty when none exists.
struct PurificationWitness {
  std::size_t from = 0;
  std::size_t to = 0;
  std::optional<ReversibleTransform> transform;
};

struct PurificationReport {
  GptTensor target;
  std::vector<Purification> purifications;
  /// Every purification is connected to the first one with the same party
  /// count by a transform on the purifying sites.
  bool unique_up_to_local = true;
  std::vector<PurificationWitness> witnesses;
};

/// Scans the catalog for states whose site-0 marginal equals `target`.
PurificationReport find_purifications(const GptTensor& target, PurificationCatalog catalog,
                                      const FiducialConvention& conv = {});

/// Strict interior of the single-site square: |s0| + |s1| < 1 and s2 = 1.
bool is_internal_single(const GptTensor& state);

/// Distinct single-site marginals of the catalog states, over every kept site.
std::vector<GptTensor> single_site_marginals(PurificationCatalog catalog,
                                             const FiducialConvention& conv = {});

/// Ψ1 = Ω16 ⊗ ω0 against Ψ2 = class 44: both purify μ on site 0, and the
/// report records whether a transform on sites {1, 2} connects them.
PurificationReport tripartite_uniqueness_counterexample(const FiducialConvention& conv = {});

}  // namespace prbox
