#include "prbox/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "prbox/error.hpp"

namespace prbox {

namespace {

std::vector<int> to_one_based(const std::vector<int>& v) {
  std::vector<int> out;
  for (int i : v) out.push_back(i + 1);
  return out;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kParse, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("field '") + key + "': " + e.what());
  }
}

Dyadic parse_number(const Json& j) {
  if (j.is_number_integer()) return Dyadic(j.get<std::int64_t>());
  if (!j.is_string()) throw Error(ErrorCode::kParse, "numbers are fraction strings");
  return Dyadic::parse(j.get<std::string>());
}

}  // namespace

std::string number_text(const Dyadic& value, bool decimal) {
  if (!decimal) return value.to_string();
  std::ostringstream os;
  os << std::setprecision(15) << value.to_double();
  return os.str();
}

Json to_json(const BoxTable& table, bool decimal) {
  Json entries = Json::array();
  const int n = table.n_parties();
  for (unsigned x = 0; x < table.n_strings(); ++x) {
    for (unsigned a = 0; a < table.n_strings(); ++a) {
      const Dyadic& p = table.prob(a, x);
      if (p.is_zero()) continue;
      entries.push_back({{"a", bitstring(a, n)}, {"p", number_text(p, decimal)}, {"x", bitstring(x, n)}});
    }
  }
  return {{"entries", entries}, {"n_parties", n}};
}

BoxTable table_from_json(const Json& j) {
  const int n = field<int>(j, "n_parties");
  if (n < 1 || n > 12) throw Error(ErrorCode::kParse, "n_parties out of range");
  BoxTable table(n);
  const Json entries = field<Json>(j, "entries");
  if (!entries.is_array()) throw Error(ErrorCode::kParse, "'entries' must be an array");
  for (const auto& e : entries) {
    const unsigned x = parse_bitstring(field<std::string>(e, "x"), n);
    const unsigned a = parse_bitstring(field<std::string>(e, "a"), n);
    if (!table.prob(a, x).is_zero()) {
      throw Error(ErrorCode::kParse, "duplicate entry for x=" + bitstring(x, n) + " a=" + bitstring(a, n));
    }
    table.set(a, x, parse_number(field<Json>(e, "p")));
  }
  return table;
}

Json to_json(const GptTensor& tensor, bool decimal) {
  Json entries = Json::array();
  for (const auto& v : tensor.entries()) entries.push_back(number_text(v, decimal));
  return {{"entries", entries}, {"n_parties", tensor.n_parties()}, {"role", to_string(tensor.role())}};
}

GptTensor tensor_from_json(const Json& j) {
  const auto role_text = field<std::string>(j, "role");
  Role role;
  if (role_text == "state") {
    role = Role::kState;
  } else if (role_text == "effect") {
    role = Role::kEffect;
  } else {
    throw Error(ErrorCode::kParse, "role must be 'state' or 'effect'");
  }
  const int n = field<int>(j, "n_parties");
  if (n < 1 || n > 12) throw Error(ErrorCode::kParse, "n_parties out of range");
  const Json entries = field<Json>(j, "entries");
  if (!entries.is_array()) throw Error(ErrorCode::kParse, "'entries' must be an array");
  std::vector<Dyadic> values;
  for (const auto& e : entries) values.push_back(parse_number(e));
  return GptTensor(role, n, std::move(values));
}

Json to_json(const ReversibleTransform& t) {
  Json sites = Json::array();
  for (const auto& s : t.sites()) {
    sites.push_back({{"k", s.rotation()}, {"s", s.sign() > 0 ? "+" : "-"}});
  }
  return {{"perm", to_one_based(t.perm())}, {"sites", sites}};
}

ReversibleTransform transform_from_json(const Json& j) {
  std::vector<int> perm;
  for (int p : field<std::vector<int>>(j, "perm")) perm.push_back(p - 1);
  std::vector<SingleSiteTransform> sites;
  for (const auto& s : field<Json>(j, "sites")) {
    const auto sign = field<std::string>(s, "s");
    if (sign != "+" && sign != "-") throw Error(ErrorCode::kParse, "site sign must be '+' or '-'");
    sites.emplace_back(field<int>(s, "k"), sign == "+" ? 1 : -1);
  }
  return ReversibleTransform(std::move(sites), std::move(perm));
}

Json to_json(const TwoOutcomePovm& povm) {
  Json terms = Json::array();
  for (const auto& t : povm.terms) terms.push_back({{"sites", t}});
  return {{"convention", povm.convention.id()}, {"terms", terms}};
}

TwoOutcomePovm povm_from_json(const Json& j) {
  std::vector<std::vector<int>> terms;
  for (const auto& t : field<Json>(j, "terms")) terms.push_back(field<std::vector<int>>(t, "sites"));
  return TwoOutcomePovm::from_terms(std::move(terms),
                                    FiducialConvention::from_id(field<int>(j, "convention")));
}

Json to_json(const Transcript& t) {
  Json boxes = Json::array();
  for (const auto& r : t.boxes) {
    boxes.push_back({{"a", r.a},
                     {"a_revealed", r.a_revealed},
                     {"b", r.b},
                     {"x", r.x},
                     {"x_revealed", r.x_revealed},
                     {"y", r.y}});
  }
  Json j = {{"accepted", t.accepted},
            {"boxes", boxes},
            {"cheat", {{"alpha", t.cheat.alpha}, {"beta", t.cheat.beta}, {"gamma", t.cheat.gamma}}},
            {"committed", t.committed},
            {"mode", to_string(t.mode)},
            {"protocol", to_string(t.protocol)},
            {"revealed", t.revealed},
            {"seed", t.seed}};
  if (t.protocol == Protocol::kBuhrman) j["n"] = t.n;
  if (t.parity_message) j["parity_message"] = *t.parity_message;
  return j;
}

Json to_json(const AuditReport& r) {
  Json j = {{"alice_sites", to_one_based(r.alice_sites)},
            {"binding", r.binding},
            {"bob_sites", to_one_based(r.bob_sites)},
            {"concealing", r.concealing},
            {"correct", r.correct},
            {"psi0", r.psi0_id},
            {"psi1", r.psi1_id}};
  j["cheat_witness"] = r.cheat_witness ? to_json(*r.cheat_witness) : Json(nullptr);
  j["povm"] = r.povm ? to_json(*r.povm) : Json(nullptr);
  return j;
}

Json to_json(const SweepSummary& s, bool include_reports) {
  Json bins = Json::array();
  for (std::size_t code = 0; code < s.counts.size(); ++code) {
    bins.push_back({{"binding", (code & 1) != 0},
                    {"concealing", (code & 2) != 0},
                    {"correct", (code & 4) != 0},
                    {"count", s.counts[code]}});
  }
  Json j = {{"bins", bins}, {"concealing", s.concealing}, {"pairs", s.pairs}, {"perfect", s.perfect}};
  if (include_reports) {
    Json reports = Json::array();
    for (const auto& r : s.reports) reports.push_back(to_json(r));
    j["reports"] = reports;
  }
  return j;
}

Json to_json(const PurificationReport& r, bool decimal) {
  Json purifications = Json::array();
  for (const auto& p : r.purifications) {
    purifications.push_back({{"id", p.id}, {"kept", to_one_based(p.kept)}});
  }
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"from", r.purifications[w.from].id},
                         {"to", r.purifications[w.to].id},
                         {"transform", w.transform ? to_json(*w.transform) : Json(nullptr)}});
  }
  return {{"purifications", purifications},
          {"target", to_json(r.target, decimal)},
          {"unique_up_to_local", r.unique_up_to_local},
          {"witnesses", witnesses}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, "malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace prbox
