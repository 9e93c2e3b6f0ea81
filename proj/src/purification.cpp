#include "prbox/purification.hpp"

#include <algorithm>
#include <set>

#include "prbox/catalog.hpp"
#include "prbox/error.hpp"

namespace prbox {

namespace {

const std::set<GptTensor>& tripartite_pure_set() {
  static const std::set<GptTensor> pure = [] {
    std::set<GptTensor> out;
    const std::vector<GptTensor> seeds = {
        tripartite_class_state(44), tripartite_class_state(45), tripartite_class_state(46),
        tensor_product(bipartite_state(16), pure_state(0)), tensor_power(pure_state(0), 3)};
    for (const auto& seed : seeds) {
      for (auto& s : orbit(seed)) out.insert(std::move(s));
    }
    return out;
  }();
  return pure;
}

std::vector<int> complement_of(const std::vector<int>& kept, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (std::find(kept.begin(), kept.end(), i) == kept.end()) out.push_back(i);
  }
  return out;
}

}  // namespace

bool is_catalog_pure(const GptTensor& state) {
  if (state.role() != Role::kState) return false;
  switch (state.n_parties()) {
    case 1:
    case 2:
      return catalog_id_of(state).has_value();
    case 3:
      return tripartite_pure_set().count(state) != 0;
    default:
      return false;
  }
}

bool is_purification(const GptTensor& candidate, const GptTensor& target,
                     const std::vector<int>& kept) {
  const int n = candidate.n_parties();
  for (int k : kept) {
    if (k < 0 || k >= n) throw Error(ErrorCode::kOutOfRange, "kept site out of range");
  }
  if (static_cast<int>(kept.size()) != target.n_parties()) {
    throw Error(ErrorCode::kShapeMismatch, "kept sites do not match the target's party count");
  }
  const auto discard = complement_of(kept, n);
  return marginalize(candidate, discard) == target;
}

std::vector<NamedState> pure_catalog(PurificationCatalog catalog, const FiducialConvention& conv) {
  std::vector<NamedState> out;
  for (int n = 0; n < 24; ++n) out.push_back({"Omega" + std::to_string(n), bipartite_state(n)});
  if (catalog == PurificationCatalog::kBipartite24PlusTripartite) {
    for (int n = 0; n < 24; ++n) {
      for (int j = 0; j < 4; ++j) {
        out.push_back({"Omega" + std::to_string(n) + "*omega" + std::to_string(j),
                       tensor_product(bipartite_state(n), pure_state(j))});
      }
    }
    for (int c : {44, 45, 46}) {
      out.push_back({"class" + std::to_string(c), tripartite_class_state(c, conv)});
    }
  }
  return out;
}

PurificationReport find_purifications(const GptTensor& target, PurificationCatalog catalog,
                                      const FiducialConvention& conv) {
  if (target.role() != Role::kState || target.n_parties() != 1) {
    throw Error(ErrorCode::kUnsupported, "purification targets are single-site states");
  }
  PurificationReport report{target, {}, true, {}};
  for (auto& entry : pure_catalog(catalog, conv)) {
    if (is_purification(entry.state, target, {0})) {
      report.purifications.push_back({std::move(entry.id), std::move(entry.state), {0}});
    }
  }
  const auto& found = report.purifications;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const int n = found[i].state.n_parties();
    std::size_t first = 0;
    while (found[first].state.n_parties() != n) ++first;
    if (first == i) continue;
    auto t = locally_connected(found[first].state, found[i].state, complement_of({0}, n));
    report.unique_up_to_local = report.unique_up_to_local && t.has_value();
    report.witnesses.push_back({first, i, std::move(t)});
  }
  return report;
}

bool is_internal_single(const GptTensor& state) {
  if (state.n_parties() != 1) {
    throw Error(ErrorCode::kUnsupported, "internality is decided for single sites only");
  }
  const auto e = state.entries();
  return state.role() == Role::kState && e[2] == Dyadic(1) && e[0].abs() + e[1].abs() < Dyadic(1);
}

std::vector<GptTensor> single_site_marginals(PurificationCatalog catalog,
                                             const FiducialConvention& conv) {
  std::vector<GptTensor> out;
  std::set<GptTensor> seen;
  for (const auto& entry : pure_catalog(catalog, conv)) {
    const int n = entry.state.n_parties();
    for (int k = 0; k < n; ++k) {
      GptTensor m = marginalize(entry.state, complement_of({k}, n));
      if (seen.insert(m).second) out.push_back(std::move(m));
    }
  }
  return out;
}

PurificationReport tripartite_uniqueness_counterexample(const FiducialConvention& conv) {
  const GptTensor mu = maximally_mixed(1);
  PurificationReport report{mu, {}, true, {}};
  report.purifications.push_back(
      {"Omega16*omega0", tensor_product(bipartite_state(16), pure_state(0)), {0}});
  report.purifications.push_back({"class44", tripartite_class_state(44, conv), {0}});
  for (const auto& p : report.purifications) {
    if (!is_purification(p.state, mu, p.kept)) {
      throw Error(ErrorCode::kInvalidTable, p.id + " does not purify the maximally mixed state");
    }
  }
  auto t = locally_connected(report.purifications[0].state, report.purifications[1].state, {1, 2});
  report.unique_up_to_local = t.has_value();
  report.witnesses.push_back({0, 1, std::move(t)});
  return report;
}

}  // namespace prbox
