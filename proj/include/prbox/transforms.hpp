#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prbox/box_table.hpp"
#include "prbox/tensor.hpp"

namespace prbox {

/// Symmetry U_k^s of the square: rotation by kπ/2 for s = +1, the matching
/// reflection for s = -1.
///
///   U_k^s = [[cos(πk/2), -s·sin(πk/2), 0],
///            [sin(πk/2),  s·cos(πk/2), 0],
///            [0,          0,           1]]
class SingleSiteTransform {
 public:
  using IntMatrix = std::array<std::array<int, 3>, 3>;

  constexpr SingleSiteTransform() = default;
  SingleSiteTransform(int rotation, int sign);

  int rotation() const { return rotation_; }
  int sign() const { return sign_; }
  bool is_identity() const { return rotation_ == 0 && sign_ == 1; }

  IntMatrix matrix() const;
  static SingleSiteTransform from_matrix(const IntMatrix& m);

  /// All 8 elements: U_0^+..U_3^+, then U_0^-..U_3^-.
  static std::array<SingleSiteTransform, 8> all();

  /// "U1+", "U3-".
  std::string label() const;

  friend bool operator==(const SingleSiteTransform&, const SingleSiteTransform&) = default;

 private:
  int rotation_ = 0;
  int sign_ = 1;
};

/// lhs ∘ rhs, i.e. the matrix product lhs·rhs.
SingleSiteTransform compose(const SingleSiteTransform& lhs, const SingleSiteTransform& rhs);
SingleSiteTransform invert(const SingleSiteTransform& t);

/// Element of the N-party reversible group: first permute the parties, then
/// act with one single-site transform per party.
///
/// Permutation semantics: output party i carries what was input party
/// perm[i]. Party indices are 0-based.
class ReversibleTransform {
 public:
  ReversibleTransform(std::vector<SingleSiteTransform> sites, std::vector<int> perm);

  static ReversibleTransform identity(int n_parties);
  static ReversibleTransform local(std::vector<SingleSiteTransform> sites);
  /// `t` on `party`, identity elsewhere.
  static ReversibleTransform on_site(int n_parties, int party, const SingleSiteTransform& t);

  int n_parties() const { return static_cast<int>(sites_.size()); }
  const std::vector<SingleSiteTransform>& sites() const { return sites_; }
  const std::vector<int>& perm() const { return perm_; }

  bool is_identity() const;
  /// Identity site transform and fixed point of the permutation on every
  /// party outside `parties`.
  bool supported_on(const std::vector<int>& parties) const;

  /// "(U1+ ⊗ I)" or "(U0+ ⊗ U2-) ∘ W[1,0]".
  std::string label() const;

  friend bool operator==(const ReversibleTransform&, const ReversibleTransform&) = default;

 private:
  std::vector<SingleSiteTransform> sites_;
  std::vector<int> perm_;
};

GptTensor apply(const ReversibleTransform& t, const GptTensor& state);
/// apply(compose(a, b), s) == apply(a, apply(b, s)).
ReversibleTransform compose(const ReversibleTransform& lhs, const ReversibleTransform& rhs);
ReversibleTransform invert(const ReversibleTransform& t);

/// Signed-permutation action on the 3^N basis: entry i is ±(j + 1) when
/// basis vector i maps to ±basis vector j. Equal signatures mean equal maps.
std::vector<int> action_signature(const ReversibleTransform& t);

struct Subgroup {
  enum class Kind { kFull, kLocalOnly, kOnSites };

  Kind kind = Kind::kFull;
  std::vector<int> sites;          // kOnSites only
  bool allow_permutations = true;  // kOnSites only; kLocalOnly never permutes

  static Subgroup full() { return {}; }
  static Subgroup local_only() { return {Kind::kLocalOnly, {}, false}; }
  static Subgroup on_sites(std::vector<int> sites, bool allow_permutations = true) {
    return {Kind::kOnSites, std::move(sites), allow_permutations};
  }
};

inline constexpr int kDefaultMaxGroupParties = 3;

/// Every distinct element of the subgroup, deduplicated by action, identity
/// first. Sizes 8, 128, 3072 for the full group at N = 1, 2, 3. N above
/// `max_parties` raises kGuardExceeded.
std::vector<ReversibleTransform> enumerate_group(int n_parties,
                                                 const Subgroup& subgroup = Subgroup::full(),
                                                 int max_parties = kDefaultMaxGroupParties);

/// Closure of `state` under the subgroup, in first-seen order.
std::vector<GptTensor> orbit(const GptTensor& state, const Subgroup& subgroup = Subgroup::full(),
                             int max_parties = kDefaultMaxGroupParties);

/// First t supported on `sites` (in enumeration order) with apply(t, from) == to,
/// or nullopt after the exhaustive search.
std::optional<ReversibleTransform> locally_connected(const GptTensor& from, const GptTensor& to,
                                                     const std::vector<int>& sites,
                                                     bool allow_permutations = true,
                                                     int max_parties = kDefaultMaxGroupParties);

/// Local relabelling of inputs and outputs, one entry per party:
///   x -> x ⊕ flip,  a -> a ⊕ α·x ⊕ γ.
struct Relabelling {
  struct Party {
    int flip_input = 0;
    int alpha = 0;
    int gamma = 0;
    friend bool operator==(const Party&, const Party&) = default;
  };
  std::vector<Party> parties;

  static Relabelling identity(int n_parties) {
    return {std::vector<Party>(static_cast<std::size_t>(n_parties))};
  }
};

/// P'(a⃗|x⃗) = P(a⃗'|x⃗') with x'_k = x_k ⊕ flip_k and a'_k = a_k ⊕ α_k x_k ⊕ γ_k.
BoxTable relabel_table(const BoxTable& table, const Relabelling& relabelling);
/// Same party semantics as ReversibleTransform: output party i is input party perm[i].
BoxTable permute_table(const BoxTable& table, const std::vector<int>& perm);

/// The relabelling a single-site transform induces on tables under `conv`.
Relabelling::Party relabelling_for(const SingleSiteTransform& t,
                                   const FiducialConvention& conv = {});

/// Table-level image of a reversible transform: permute, then relabel each
/// party. Equals state_to_table(apply(t, s)) for s with table `table`.
BoxTable transform_table(const ReversibleTransform& t, const BoxTable& table,
                         const FiducialConvention& conv = {});

}  // namespace prbox
