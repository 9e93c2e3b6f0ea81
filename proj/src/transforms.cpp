#include "prbox/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "prbox/catalog.hpp"
#include "prbox/error.hpp"
#include "site_ops.hpp"

namespace prbox {

namespace {

// cos and sin of kπ/2.
constexpr std::array<int, 4> kCos = {1, 0, -1, 0};
constexpr std::array<int, 4> kSin = {0, 1, 0, -1};

void require_perm(const std::vector<int>& perm, std::size_t n) {
  if (perm.size() != n) {
    throw Error(ErrorCode::kShapeMismatch, "permutation length differs from party count");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)]) {
      throw Error(ErrorCode::kOutOfRange, "not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

void require_same_parties(int lhs, int rhs, const char* op) {
  if (lhs != rhs) {
    throw Error(ErrorCode::kShapeMismatch, std::string(op) + ": party counts differ");
  }
}

std::vector<int> inverse_perm(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
  return inv;
}

std::vector<int> unpack(std::size_t flat, int n) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % 3);
    flat /= 3;
  }
  return idx;
}

std::size_t pack(const std::vector<int>& idx) {
  std::size_t flat = 0;
  for (int i : idx) flat = flat * 3 + static_cast<std::size_t>(i);
  return flat;
}

std::vector<Dyadic> permute_entries(std::span<const Dyadic> in, int n, const std::vector<int>& perm) {
  std::vector<Dyadic> out(in.size());
  std::vector<int> src(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto idx = unpack(flat, n);
    for (int k = 0; k < n; ++k) src[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = idx[static_cast<std::size_t>(k)];
    out[flat] = in[pack(src)];
  }
  return out;
}

detail::Mat3 to_dyadic(const SingleSiteTransform::IntMatrix& m) {
  detail::Mat3 out;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) out[r][c] = Dyadic(m[r][c]);
  }
  return out;
}

std::vector<std::vector<int>> permutations_within(int n, const std::vector<int>& movable,
                                                  bool allow) {
  std::vector<int> base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  if (!allow || movable.size() < 2) return {base};
  std::vector<int> slots = movable;
  std::sort(slots.begin(), slots.end());
  std::vector<int> arrangement = slots;
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> perm = base;
    for (std::size_t i = 0; i < slots.size(); ++i) perm[static_cast<std::size_t>(slots[i])] = arrangement[i];
    out.push_back(std::move(perm));
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return out;
}

}  // namespace

SingleSiteTransform::SingleSiteTransform(int rotation, int sign)
    : rotation_(rotation), sign_(sign) {
  if (rotation < 0 || rotation > 3) {
    throw Error(ErrorCode::kOutOfRange, "rotation index outside 0..3");
  }
  if (sign != 1 && sign != -1) throw Error(ErrorCode::kOutOfRange, "sign must be +1 or -1");
}

SingleSiteTransform::IntMatrix SingleSiteTransform::matrix() const {
  const int c = kCos[static_cast<std::size_t>(rotation_)];
  const int s = kSin[static_cast<std::size_t>(rotation_)];
  return {{{c, -sign_ * s, 0}, {s, sign_ * c, 0}, {0, 0, 1}}};
}

SingleSiteTransform SingleSiteTransform::from_matrix(const IntMatrix& m) {
  for (const auto& t : all()) {
    if (t.matrix() == m) return t;
  }
  throw Error(ErrorCode::kOutOfRange, "matrix is not a symmetry of the square");
}

std::array<SingleSiteTransform, 8> SingleSiteTransform::all() {
  std::array<SingleSiteTransform, 8> out;
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = SingleSiteTransform(i % 4, i < 4 ? 1 : -1);
  return out;
}

std::string SingleSiteTransform::label() const {
  return "U" + std::to_string(rotation_) + (sign_ > 0 ? "+" : "-");
}

SingleSiteTransform compose(const SingleSiteTransform& lhs, const SingleSiteTransform& rhs) {
  const auto a = lhs.matrix();
  const auto b = rhs.matrix();
  SingleSiteTransform::IntMatrix out{};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t k = 0; k < 3; ++k) out[r][c] += a[r][k] * b[k][c];
    }
  }
  return SingleSiteTransform::from_matrix(out);
}

SingleSiteTransform invert(const SingleSiteTransform& t) {
  // Orthogonal matrices: the inverse is the transpose.
  const auto m = t.matrix();
  SingleSiteTransform::IntMatrix out{};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) out[r][c] = m[c][r];
  }
  return SingleSiteTransform::from_matrix(out);
}

ReversibleTransform::ReversibleTransform(std::vector<SingleSiteTransform> sites,
                                         std::vector<int> perm)
    : sites_(std::move(sites)), perm_(std::move(perm)) {
  if (sites_.empty()) throw Error(ErrorCode::kDegenerate, "transform needs at least one party");
  require_perm(perm_, sites_.size());
}

ReversibleTransform ReversibleTransform::identity(int n_parties) {
  return local(std::vector<SingleSiteTransform>(static_cast<std::size_t>(std::max(n_parties, 0))));
}

ReversibleTransform ReversibleTransform::local(std::vector<SingleSiteTransform> sites) {
  std::vector<int> perm(sites.size());
  std::iota(perm.begin(), perm.end(), 0);
  return ReversibleTransform(std::move(sites), std::move(perm));
}

ReversibleTransform ReversibleTransform::on_site(int n_parties, int party,
                                                 const SingleSiteTransform& t) {
  if (party < 0 || party >= n_parties) throw Error(ErrorCode::kOutOfRange, "party out of range");
  std::vector<SingleSiteTransform> sites(static_cast<std::size_t>(n_parties));
  sites[static_cast<std::size_t>(party)] = t;
  return local(std::move(sites));
}

bool ReversibleTransform::is_identity() const {
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (!sites_[i].is_identity() || perm_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

bool ReversibleTransform::supported_on(const std::vector<int>& parties) const {
  for (int i = 0; i < n_parties(); ++i) {
    if (std::find(parties.begin(), parties.end(), i) != parties.end()) continue;
    if (!sites_[static_cast<std::size_t>(i)].is_identity() || perm_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

std::string ReversibleTransform::label() const {
  std::string out = "(";
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (i > 0) out += " ⊗ ";
    out += sites_[i].is_identity() ? "I" : sites_[i].label();
  }
  out += ")";
  bool permuted = false;
  for (std::size_t i = 0; i < perm_.size(); ++i) permuted = permuted || perm_[i] != static_cast<int>(i);
  if (permuted) {
    out += " ∘ W[";
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(perm_[i]);
    }
    out += "]";
  }
  return out;
}

GptTensor apply(const ReversibleTransform& t, const GptTensor& state) {
  require_same_parties(t.n_parties(), state.n_parties(), "apply");
  if (state.role() != Role::kState) {
    throw Error(ErrorCode::kRoleMismatch, "reversible transforms act on states");
  }
  const int n = state.n_parties();
  std::vector<Dyadic> data = permute_entries(state.entries(), n, t.perm());
  for (int k = 0; k < n; ++k) {
    const auto& site = t.sites()[static_cast<std::size_t>(k)];
    if (!site.is_identity()) detail::apply_on_axis(data, n, k, to_dyadic(site.matrix()));
  }
  return GptTensor(Role::kState, n, std::move(data));
}

ReversibleTransform compose(const ReversibleTransform& lhs, const ReversibleTransform& rhs) {
  require_same_parties(lhs.n_parties(), rhs.n_parties(), "compose");
  // U1 P1 U2 P2 = U1 (P1 U2 P1^-1) P1 P2; conjugating by P1 moves the site
  // transform of party perm1[i] onto party i.
  const std::size_t n = static_cast<std::size_t>(lhs.n_parties());
  std::vector<SingleSiteTransform> sites(n);
  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto moved = static_cast<std::size_t>(lhs.perm()[i]);
    sites[i] = compose(lhs.sites()[i], rhs.sites()[moved]);
    perm[i] = rhs.perm()[moved];
  }
  return ReversibleTransform(std::move(sites), std::move(perm));
}

ReversibleTransform invert(const ReversibleTransform& t) {
  const auto inv = inverse_perm(t.perm());
  std::vector<SingleSiteTransform> sites(inv.size());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    sites[i] = invert(t.sites()[static_cast<std::size_t>(inv[i])]);
  }
  return ReversibleTransform(std::move(sites), inv);
}

std::vector<int> action_signature(const ReversibleTransform& t) {
  const int n = t.n_parties();
  const std::size_t size = tensor_size(n);
  std::vector<int> sig(size);
  std::vector<int> dst(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < size; ++flat) {
    const auto src = unpack(flat, n);
    int sign = 1;
    for (int k = 0; k < n; ++k) {
      // Permutation: output party k takes input party perm[k]'s index.
      const int local = src[static_cast<std::size_t>(t.perm()[static_cast<std::size_t>(k)])];
      // Column `local` of the site matrix has a single ±1 entry.
      const auto m = t.sites()[static_cast<std::size_t>(k)].matrix();
      for (int r = 0; r < 3; ++r) {
        if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(local)] != 0) {
          dst[static_cast<std::size_t>(k)] = r;
          sign *= m[static_cast<std::size_t>(r)][static_cast<std::size_t>(local)];
        }
      }
    }
    sig[flat] = sign * static_cast<int>(pack(dst) + 1);
  }
  return sig;
}

std::vector<ReversibleTransform> enumerate_group(int n_parties, const Subgroup& subgroup,
                                                 int max_parties) {
  if (n_parties < 1) throw Error(ErrorCode::kDegenerate, "group needs at least one party");
  if (n_parties > max_parties) {
    throw Error(ErrorCode::kGuardExceeded,
                "exhaustive group enumeration is limited to N <= " + std::to_string(max_parties));
  }
  std::vector<int> active;
  switch (subgroup.kind) {
    case Subgroup::Kind::kFull:
    case Subgroup::Kind::kLocalOnly:
      active.resize(static_cast<std::size_t>(n_parties));
      std::iota(active.begin(), active.end(), 0);
      break;
    case Subgroup::Kind::kOnSites:
      for (int s : subgroup.sites) {
        if (s < 0 || s >= n_parties) throw Error(ErrorCode::kOutOfRange, "site out of range");
        if (std::find(active.begin(), active.end(), s) == active.end()) active.push_back(s);
      }
      std::sort(active.begin(), active.end());
      break;
  }
  const bool permute = subgroup.kind == Subgroup::Kind::kFull ||
                       (subgroup.kind == Subgroup::Kind::kOnSites && subgroup.allow_permutations);

  const auto elements = SingleSiteTransform::all();
  std::vector<ReversibleTransform> out;
  std::set<std::vector<int>> seen;
  for (const auto& perm : permutations_within(n_parties, active, permute)) {
    std::vector<std::size_t> odometer(active.size(), 0);
    while (true) {
      std::vector<SingleSiteTransform> sites(static_cast<std::size_t>(n_parties));
      for (std::size_t i = 0; i < active.size(); ++i) {
        sites[static_cast<std::size_t>(active[i])] = elements[odometer[i]];
      }
      ReversibleTransform t(std::move(sites), perm);
      if (seen.insert(action_signature(t)).second) out.push_back(std::move(t));

      std::size_t pos = active.size();
      while (pos > 0) {
        --pos;
        if (++odometer[pos] < elements.size()) break;
        odometer[pos] = 0;
        if (pos == 0) {
          pos = active.size() + 1;
          break;
        }
      }
      if (active.empty() || pos == active.size() + 1) break;
    }
  }
  return out;
}

std::vector<GptTensor> orbit(const GptTensor& state, const Subgroup& subgroup, int max_parties) {
  std::vector<GptTensor> out;
  std::set<GptTensor> seen;
  for (const auto& t : enumerate_group(state.n_parties(), subgroup, max_parties)) {
    GptTensor image = apply(t, state);
    if (seen.insert(image).second) out.push_back(std::move(image));
  }
  return out;
}

std::optional<ReversibleTransform> locally_connected(const GptTensor& from, const GptTensor& to,
                                                     const std::vector<int>& sites,
                                                     bool allow_permutations, int max_parties) {
  if (from.n_parties() != to.n_parties() || from.role() != to.role()) return std::nullopt;
  for (auto& t : enumerate_group(from.n_parties(), Subgroup::on_sites(sites, allow_permutations),
                                 max_parties)) {
    if (apply(t, from) == to) return std::move(t);
  }
  return std::nullopt;
}

BoxTable relabel_table(const BoxTable& table, const Relabelling& relabelling) {
  const int n = table.n_parties();
  if (static_cast<int>(relabelling.parties.size()) != n) {
    throw Error(ErrorCode::kShapeMismatch, "relabelling party count differs from table");
  }
  for (const auto& p : relabelling.parties) {
    for (int b : {p.flip_input, p.alpha, p.gamma}) {
      if (b != 0 && b != 1) throw Error(ErrorCode::kOutOfRange, "relabelling bits must be 0 or 1");
    }
  }
  BoxTable out(n);
  const unsigned strings = static_cast<unsigned>(table.n_strings());
  for (unsigned x = 0; x < strings; ++x) {
    for (unsigned a = 0; a < strings; ++a) {
      unsigned src_x = 0, src_a = 0;
      for (int k = 0; k < n; ++k) {
        const auto& p = relabelling.parties[static_cast<std::size_t>(k)];
        const int xk = table.bit(x, k);
        const int ak = table.bit(a, k);
        src_x = (src_x << 1) | static_cast<unsigned>(xk ^ p.flip_input);
        src_a = (src_a << 1) | static_cast<unsigned>(ak ^ (p.alpha & xk) ^ p.gamma);
      }
      out.set(a, x, table.prob(src_a, src_x));
    }
  }
  return out;
}

BoxTable permute_table(const BoxTable& table, const std::vector<int>& perm) {
  const int n = table.n_parties();
  require_perm(perm, static_cast<std::size_t>(n));
  auto move_bits = [&](unsigned packed) {
    unsigned src = 0;
    for (int k = 0; k < n; ++k) {
      const unsigned bit = static_cast<unsigned>(table.bit(packed, k));
      src |= bit << (n - 1 - perm[static_cast<std::size_t>(k)]);
    }
    return src;
  };
  BoxTable out(n);
  for (unsigned x = 0; x < table.n_strings(); ++x) {
    for (unsigned a = 0; a < table.n_strings(); ++a) out.set(a, x, table.prob(move_bits(a), move_bits(x)));
  }
  return out;
}

Relabelling::Party relabelling_for(const SingleSiteTransform& t, const FiducialConvention& conv) {
  const auto transform = ReversibleTransform::local({t});
  std::array<BoxTable, 4> before = {state_to_table(pure_state(0), conv), state_to_table(pure_state(1), conv),
                                    state_to_table(pure_state(2), conv), state_to_table(pure_state(3), conv)};
  std::array<BoxTable, 4> after = {
      state_to_table(apply(transform, pure_state(0)), conv), state_to_table(apply(transform, pure_state(1)), conv),
      state_to_table(apply(transform, pure_state(2)), conv), state_to_table(apply(transform, pure_state(3)), conv)};
  // The ω's span the state space, so agreement on them fixes the relabelling.
  for (int code = 0; code < 8; ++code) {
    const Relabelling::Party party{(code >> 2) & 1, (code >> 1) & 1, code & 1};
    const Relabelling r{{party}};
    bool match = true;
    for (std::size_t i = 0; i < 4 && match; ++i) match = relabel_table(before[i], r) == after[i];
    if (match) return party;
  }
  throw Error(ErrorCode::kInvalidConvention, "transform has no table relabelling");
}

BoxTable transform_table(const ReversibleTransform& t, const BoxTable& table,
                         const FiducialConvention& conv) {
  require_same_parties(t.n_parties(), table.n_parties(), "transform_table");
  Relabelling r;
  for (const auto& site : t.sites()) r.parties.push_back(relabelling_for(site, conv));
  return relabel_table(permute_table(table, t.perm()), r);
}

}  // namespace prbox
