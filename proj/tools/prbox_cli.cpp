// prbox: command-line front end for the PR-box library.
//
// Exit codes: 0 success or expected verdict, 1 usage or input error,
// 2 verdict or invariant mismatch.

#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prbox/box_table.hpp"
#include "prbox/catalog.hpp"
#include "prbox/commitment.hpp"
#include "prbox/discrimination.hpp"
#include "prbox/error.hpp"
#include "prbox/json_io.hpp"
#include "prbox/purification.hpp"
#include "prbox/transforms.hpp"
#include "prbox/validity.hpp"

namespace {

using namespace prbox;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

struct Globals {
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 1;
  unsigned jobs = 1;
  int convention = 0;
  bool decimal = false;

  FiducialConvention conv() const { return FiducialConvention::from_id(convention); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  Json json;
  std::string text;
  std::string csv;
  int exit_code = kExitOk;
};

void emit(const Globals& g, const Output& out) {
  if (g.format == "json") {
    std::cout << dump(out.json);
  } else if (g.format == "csv") {
    std::cout << out.csv;
  } else {
    std::cout << out.text;
  }
}

std::vector<int> parse_sites(const std::string& text, int n) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int site = 0;
    try {
      std::size_t used = 0;
      site = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad site '" + item + "'");
    }
    if (site < 1 || site > n) throw UsageError("site " + item + " outside 1.." + std::to_string(n));
    out.push_back(site - 1);
  }
  if (out.empty()) throw UsageError("empty site list");
  return out;
}

std::string join_one_based(const std::vector<int>& sites, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(sites[i] + 1);
  }
  return out;
}

std::string csv_entries(std::span<const Dyadic> entries, bool decimal) {
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) out += ";";
    out += number_text(entries[i], decimal);
  }
  return out;
}

std::string tensor_text(const GptTensor& t, bool decimal) {
  if (!decimal) return format_tensor(t);
  std::string out = "(";
  const auto e = t.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i > 0) out += ", ";
    out += number_text(e[i], true);
  }
  return out + ")";
}

std::string table_text(const BoxTable& table, bool decimal) {
  std::string out = "x" + std::string(static_cast<std::size_t>(table.n_parties()), ' ') + "a" +
                    std::string(static_cast<std::size_t>(table.n_parties()), ' ') + "p\n";
  for (unsigned x = 0; x < table.n_strings(); ++x) {
    for (unsigned a = 0; a < table.n_strings(); ++a) {
      const Dyadic& p = table.prob(a, x);
      if (p.is_zero()) continue;
      out += bitstring(x, table.n_parties()) + " " + bitstring(a, table.n_parties()) + " " +
             number_text(p, decimal) + "\n";
    }
  }
  return out;
}

std::string table_csv(const BoxTable& table, bool decimal) {
  std::string out = "x,a,p\n";
  for (unsigned x = 0; x < table.n_strings(); ++x) {
    for (unsigned a = 0; a < table.n_strings(); ++a) {
      const Dyadic& p = table.prob(a, x);
      if (p.is_zero()) continue;
      out += bitstring(x, table.n_parties()) + "," + bitstring(a, table.n_parties()) + "," +
             number_text(p, decimal) + "\n";
    }
  }
  return out;
}

bool is_tensor_json(const Json& j) { return j.is_object() && j.contains("role"); }

GptTensor resolve_state(const std::string& selector, const Globals& g) {
  if (auto entry = find_catalog_entry(selector, g.conv())) {
    if (entry->tensor.role() != Role::kState) throw UsageError("'" + selector + "' is not a state");
    return entry->tensor;
  }
  if (!std::filesystem::exists(selector)) {
    throw UsageError("'" + selector + "' is neither a catalog id nor a readable file");
  }
  const Json j = read_json_file(selector);
  if (is_tensor_json(j)) {
    GptTensor t = tensor_from_json(j);
    if (t.role() != Role::kState) throw UsageError("'" + selector + "' holds an effect");
    return t;
  }
  return table_to_state(table_from_json(j), g.conv());
}

BoxTable resolve_table(const std::string& selector, const Globals& g) {
  if (auto entry = find_catalog_entry(selector, g.conv())) {
    if (entry->tensor.role() != Role::kState) throw UsageError("'" + selector + "' is not a state");
    return state_to_table(entry->tensor, g.conv());
  }
  if (!std::filesystem::exists(selector)) {
    throw UsageError("'" + selector + "' is neither a catalog id nor a readable file");
  }
  const Json j = read_json_file(selector);
  if (is_tensor_json(j)) return state_to_table(tensor_from_json(j), g.conv());
  return table_from_json(j);
}

std::string label_of(const GptTensor& s, const Globals& g) {
  for (const auto& entry : catalog_entries(g.conv())) {
    if (entry.tensor == s) return entry.id;
  }
  return "";
}

// Commands.

Output cmd_catalog(const Globals& g) {
  Output out;
  out.json = Json::array();
  out.csv = "id,role,n_parties,entries,description\n";
  for (const auto& entry : catalog_entries(g.conv())) {
    Json item = to_json(entry.tensor, g.decimal);
    item["id"] = entry.id;
    item["description"] = entry.description;
    out.json.push_back(item);
    out.csv += entry.id + "," + to_string(entry.tensor.role()) + "," +
               std::to_string(entry.tensor.n_parties()) + "," +
               csv_entries(entry.tensor.entries(), g.decimal) + "," + entry.description + "\n";
    out.text += entry.id + " (" + entry.description + ")\n";
    if (entry.tensor.n_parties() <= 2) out.text += tensor_text(entry.tensor, g.decimal) + "\n";
  }
  return out;
}

Output cmd_catalog_show(const Globals& g, const std::string& id) {
  const auto entry = find_catalog_entry(id, g.conv());
  if (!entry) throw UsageError("unknown catalog id '" + id + "'");
  Output out;
  out.json = to_json(entry->tensor, g.decimal);
  out.json["id"] = entry->id;
  out.json["description"] = entry->description;
  out.text = entry->id + " (" + entry->description + ")\n" + tensor_text(entry->tensor, g.decimal) + "\n";
  out.csv = "id,role,n_parties,entries,description\n" + entry->id + "," +
            to_string(entry->tensor.role()) + "," + std::to_string(entry->tensor.n_parties()) + "," +
            csv_entries(entry->tensor.entries(), g.decimal) + "," + entry->description + "\n";
  if (entry->tensor.role() == Role::kState) {
    const BoxTable table = state_to_table(entry->tensor, g.conv());
    out.json["table"] = to_json(table, g.decimal);
    out.text += table_text(table, g.decimal);
  }
  return out;
}

Output cmd_validate(const Globals& g, const std::string& path) {
  const Json j = read_json_file(path);
  Output out;
  std::string kind;
  bool ok = true;
  std::string violated;
  std::string detail;
  if (is_tensor_json(j)) {
    const GptTensor t = tensor_from_json(j);
    const Validity v = t.role() == Role::kState ? is_valid_state(t) : is_valid_effect(t);
    kind = to_string(t.role());
    ok = v.valid;
    violated = ok ? "" : (t.role() == Role::kState ? "state_polytope" : "effect_bounds");
    detail = v.diagnostic;
  } else {
    const BoxTable table = table_from_json(j);
    const InvariantReport r = check_box_invariants(table);
    kind = "table";
    ok = r.ok;
    violated = r.violated;
    detail = r.detail;
  }
  (void)g;
  out.json = {{"detail", detail}, {"kind", kind}, {"valid", ok}, {"violated", violated}};
  out.text = ok ? "valid " + kind + "\n" : "invalid " + kind + ": " + violated + " (" + detail + ")\n";
  out.csv = "kind,valid,violated,detail\n" + kind + "," + (ok ? "true" : "false") + "," + violated + "," + detail + "\n";
  out.exit_code = ok ? kExitOk : kExitMismatch;
  return out;
}

Output cmd_table(const Globals& g, const std::string& selector) {
  const BoxTable table = state_to_table(resolve_state(selector, g), g.conv());
  return {to_json(table, g.decimal), table_text(table, g.decimal), table_csv(table, g.decimal)};
}

Output cmd_chsh(const Globals& g, const std::string& selector) {
  const BoxTable table = resolve_table(selector, g);
  const InvariantReport r = check_box_invariants(table);
  if (!r.ok) throw Error(ErrorCode::kInvalidTable, "table violates " + r.violated + ": " + r.detail);
  const std::string value = number_text(chsh_value(table), g.decimal);
  return {{{"chsh", value}}, value + "\n", "chsh\n" + value + "\n"};
}

Output cmd_discriminate(const Globals& g, const std::string& first, const std::string& second) {
  const GptTensor s1 = resolve_state(first, g);
  const GptTensor s2 = resolve_state(second, g);
  const TwoOutcomePovm povm = discriminating_povm(s1, s2, g.conv());
  const bool ok = verify_perfect_discrimination(povm, s1, s2);
  const std::string p1 = number_text(pair(povm.a, s1), g.decimal);
  const std::string p2 = number_text(pair(povm.a, s2), g.decimal);
  Output out;
  out.json = {{"pairings", {p1, p2}}, {"povm", to_json(povm)}, {"verified", ok}};
  std::string terms;
  out.csv = "term,sites\n";
  for (std::size_t i = 0; i < povm.terms.size(); ++i) {
    std::string sites;
    for (std::size_t k = 0; k < povm.terms[i].size(); ++k) {
      sites += (k > 0 ? "⊗b" : "b") + std::to_string(povm.terms[i][k]);
    }
    terms += (i > 0 ? " + " : "") + sites;
    out.csv += std::to_string(i + 1) + "," + sites + "\n";
  }
  out.text = "a = " + terms + "\npair(a, first) = " + p1 + ", pair(a, second) = " + p2 + "\n" +
             (ok ? "perfect discrimination verified\n" : "verification FAILED\n");
  out.exit_code = ok ? kExitOk : kExitMismatch;
  return out;
}

Output cmd_orbit(const Globals& g, const std::string& selector, const std::string& sites,
                 bool no_permutations, int max_parties) {
  const GptTensor s = resolve_state(selector, g);
  const Subgroup sub = sites.empty()
                           ? (no_permutations ? Subgroup::local_only() : Subgroup::full())
                           : Subgroup::on_sites(parse_sites(sites, s.n_parties()), !no_permutations);
  const auto elements = orbit(s, sub, max_parties);
  Output out;
  Json list = Json::array();
  out.csv = "index,id,entries\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string id = label_of(elements[i], g);
    Json item = to_json(elements[i], g.decimal);
    item["id"] = id;
    list.push_back(item);
    out.csv += std::to_string(i + 1) + "," + id + "," + csv_entries(elements[i].entries(), g.decimal) + "\n";
    out.text += (id.empty() ? "(uncatalogued)" : id) + "\n";
    if (id.empty() || s.n_parties() == 1) out.text += tensor_text(elements[i], g.decimal) + "\n";
  }
  out.json = {{"orbit", list}, {"size", elements.size()}};
  out.text = std::to_string(elements.size()) + " states\n" + out.text;
  return out;
}

Output cmd_purify(const Globals& g, const std::string& selector, const std::string& catalog) {
  PurificationCatalog cat;
  if (catalog == "bipartite24") {
    cat = PurificationCatalog::kBipartite24;
  } else if (catalog == "bipartite24_plus_tripartite") {
    cat = PurificationCatalog::kBipartite24PlusTripartite;
  } else {
    throw UsageError("unknown catalog '" + catalog + "'");
  }
  const GptTensor target = resolve_state(selector, g);
  const PurificationReport report = find_purifications(target, cat, g.conv());
  Output out;
  out.json = to_json(report, g.decimal);
  out.csv = "id,kept\n";
  out.text = std::to_string(report.purifications.size()) + " purifications:";
  for (const auto& p : report.purifications) {
    out.text += " " + p.id;
    out.csv += p.id + "," + join_one_based(p.kept, ";") + "\n";
  }
  out.text += std::string("\nunique up to local reversible transforms: ") +
              (report.unique_up_to_local ? "yes" : "no") + "\n";
  return out;
}

Output cmd_bc_run(const Globals& g, const std::string& protocol, int n, const std::string& mode,
                  int bit, bool transcripts) {
  RunConfig config;
  config.protocol = parse_protocol(protocol);
  config.mode = parse_mode(mode);
  config.n = n;
  config.bit = bit;
  config.seed = g.seed;
  config.trials = g.trials;
  config.jobs = g.jobs;
  config.conv = g.conv();
  if (config.protocol == Protocol::kBuhrman && config.mode == Mode::kNaiveCheat) {
    throw UsageError("the Buhrman protocol supports honest and transform_cheat");
  }
  const RunSummary summary = run_trials(config, transcripts);
  const bool met = meets_expectation(config, summary);
  Output out;
  out.json = {{"accepted", summary.accepted},
              {"bit", bit},
              {"expectation_met", met},
              {"mode", mode},
              {"protocol", protocol},
              {"revealed_flipped", summary.revealed_flipped},
              {"seed", g.seed},
              {"trials", summary.trials}};
  if (config.protocol == Protocol::kBuhrman) out.json["n"] = n;
  if (transcripts) {
    Json list = Json::array();
    for (const auto& t : summary.transcripts) list.push_back(to_json(t));
    out.json["transcripts"] = list;
  }
  const std::string revealed = summary.revealed_flipped == summary.accepted && summary.accepted > 0
                                   ? "c⊕1"
                                   : (summary.revealed_flipped == 0 ? "c" : "mixed");
  out.text = "acceptance " + std::to_string(summary.accepted) + "/" + std::to_string(summary.trials) +
             ", revealed = " + revealed + "\nexpectation " + (met ? "met" : "NOT met") + "\n";
  out.csv = "protocol,mode,n,bit,seed,trials,accepted,revealed_flipped,expectation_met\n" + protocol +
            "," + mode + "," + std::to_string(n) + "," + std::to_string(bit) + "," +
            std::to_string(g.seed) + "," + std::to_string(summary.trials) + "," +
            std::to_string(summary.accepted) + "," + std::to_string(summary.revealed_flipped) + "," +
            (met ? "true" : "false") + "\n";
  out.exit_code = met ? kExitOk : kExitMismatch;
  return out;
}

std::string audit_csv_header() { return "psi0,psi1,alice,bob,correct,concealing,binding\n"; }

std::string audit_csv_row(const AuditReport& r) {
  auto b = [](bool v) { return v ? std::string("true") : std::string("false"); };
  return r.psi0_id + "," + r.psi1_id + "," + join_one_based(r.alice_sites, ";") + "," +
         join_one_based(r.bob_sites, ";") + "," + b(r.correct) + "," + b(r.concealing) + "," +
         b(r.binding) + "\n";
}

std::string audit_text(const AuditReport& r) {
  auto b = [](bool v) { return v ? std::string("yes") : std::string("no"); };
  std::string out = r.psi0_id + " vs " + r.psi1_id + ", alice {" + join_one_based(r.alice_sites) +
                    "}: correct " + b(r.correct) + ", concealing " + b(r.concealing) +
                    ", binding " + b(r.binding);
  if (r.cheat_witness) out += ", witness " + r.cheat_witness->label();
  return out + "\n";
}

Output cmd_bc_audit(const Globals& g, const std::string& first, const std::string& second,
                    const std::string& alice) {
  const GptTensor s1 = resolve_state(first, g);
  const GptTensor s2 = resolve_state(second, g);
  std::vector<AuditReport> reports;
  if (alice == "all") {
    reports = audit_all_splits(s1, s2, g.conv());
  } else {
    reports.push_back(audit_protocol(s1, s2, parse_sites(alice, s1.n_parties()), g.conv()));
  }
  Output out;
  out.json = Json::array();
  out.csv = audit_csv_header();
  for (const auto& r : reports) {
    out.json.push_back(to_json(r));
    out.csv += audit_csv_row(r);
    out.text += audit_text(r);
  }
  if (reports.size() == 1) out.json = out.json.front();
  return out;
}

Output cmd_sweep(const Globals& g, const std::string& alice, bool reports) {
  const SweepSummary s = impossibility_sweep(parse_sites(alice, 2), g.conv(), g.jobs);
  Output out;
  out.json = to_json(s, reports);
  out.csv = "correct,concealing,binding,count\n";
  for (std::size_t code = 0; code < s.counts.size(); ++code) {
    out.csv += std::string((code & 4) ? "true" : "false") + "," + ((code & 2) ? "true" : "false") +
               "," + ((code & 1) ? "true" : "false") + "," + std::to_string(s.counts[code]) + "\n";
  }
  out.text = std::to_string(s.perfect) + " / " + std::to_string(s.pairs) +
             " pairs admit perfect BC\nconcealing pairs: " + std::to_string(s.concealing) + "\n";
  // Theorem check: no pair may be correct, concealing and binding.
  out.exit_code = s.perfect == 0 ? kExitOk : kExitMismatch;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PR-box states, transforms, discrimination, purification and bit commitment"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", g.seed, "Base RNG seed");
  app.add_option("--trials", g.trials, "Protocol trials")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  app.add_option("--jobs", g.jobs, "Worker threads; output is independent of this")
      ->check(CLI::Range(1U, 1024U));
  app.add_option("--convention", g.convention, "Fiducial convention id 0..7")->check(CLI::Range(0, 7));
  app.add_flag("--decimal", g.decimal, "Render numbers as decimal approximations");

  std::function<Output()> run;

  auto* catalog = app.add_subcommand("catalog", "List catalog states and effects");
  std::string show_id;
  auto* show = catalog->add_subcommand("show", "Show one catalog entry");
  show->add_option("id", show_id, "Catalog id")->required();
  catalog->callback([&] {
    if (!run) run = [&] { return cmd_catalog(g); };
  });
  show->callback([&] { run = [&] { return cmd_catalog_show(g, show_id); }; });

  std::string path;
  auto* validate = app.add_subcommand("validate", "Check a table or tensor file");
  validate->add_option("path", path, "JSON file")->required();
  validate->callback([&] { run = [&] { return cmd_validate(g, path); }; });

  std::string state_sel;
  auto* table = app.add_subcommand("table", "Box table of a state");
  table->add_option("state", state_sel, "Catalog id or file")->required();
  table->callback([&] { run = [&] { return cmd_table(g, state_sel); }; });

  std::string table_sel;
  auto* chsh = app.add_subcommand("chsh", "CHSH value Σ Pr(a⊕b = xy)");
  chsh->add_option("--table", table_sel, "Catalog id or file")->required();
  chsh->callback([&] { run = [&] { return cmd_chsh(g, table_sel); }; });

  std::string first_sel, second_sel;
  auto* discriminate = app.add_subcommand("discriminate", "Perfectly discriminating POVM");
  discriminate->add_option("first", first_sel, "Catalog id or file")->required();
  discriminate->add_option("second", second_sel, "Catalog id or file")->required();
  discriminate->callback([&] { run = [&] { return cmd_discriminate(g, first_sel, second_sel); }; });

  std::string orbit_sites;
  bool no_perm = false;
  int max_parties = kDefaultMaxGroupParties;
  auto* orbit_cmd = app.add_subcommand("orbit", "Orbit under reversible transforms");
  orbit_cmd->add_option("state", state_sel, "Catalog id or file")->required();
  orbit_cmd->add_option("--sites", orbit_sites, "Comma-separated 1-based sites (default: all, with permutations)");
  orbit_cmd->add_flag("--no-permutations", no_perm, "Exclude party permutations");
  orbit_cmd->add_option("--max-parties", max_parties, "Guard on exhaustive enumeration");
  orbit_cmd->callback([&] { run = [&] { return cmd_orbit(g, state_sel, orbit_sites, no_perm, max_parties); }; });

  std::string purify_catalog = "bipartite24";
  auto* purify = app.add_subcommand("purify", "Purifications of a single-site state");
  purify->add_option("target", state_sel, "Catalog id or file")->required();
  purify->add_option("--catalog", purify_catalog, "bipartite24 or bipartite24_plus_tripartite");
  purify->callback([&] { run = [&] { return cmd_purify(g, state_sel, purify_catalog); }; });

  auto* bc = app.add_subcommand("bc", "Bit-commitment protocols");
  bc->require_subcommand(1);
  std::string protocol = "single", mode = "honest";
  int n = 1, bit = 0;
  bool transcripts = false;
  auto* bc_run = bc->add_subcommand("run", "Run protocol trials");
  bc_run->add_option("--protocol", protocol, "single or buhrman")->check(CLI::IsMember({"single", "buhrman"}));
  bc_run->add_option("--n", n, "Buhrman size: 2n+1 boxes")->check(CLI::Range(1, 64));
  bc_run->add_option("--mode", mode, "honest, naive_cheat or transform_cheat")
      ->check(CLI::IsMember({"honest", "naive_cheat", "transform_cheat"}));
  bc_run->add_option("--bit", bit, "Committed bit")->check(CLI::Range(0, 1));
  bc_run->add_flag("--transcripts", transcripts, "Include every transcript in JSON output");
  bc_run->callback([&] { run = [&] { return cmd_bc_run(g, protocol, n, mode, bit, transcripts); }; });

  std::string alice = "1";
  auto* bc_audit = bc->add_subcommand("audit", "Correct / concealing / binding audit");
  bc_audit->add_option("psi0", first_sel, "Catalog id or file")->required();
  bc_audit->add_option("psi1", second_sel, "Catalog id or file")->required();
  bc_audit->add_option("--alice", alice, "Comma-separated 1-based Alice sites, or 'all' for every split");
  bc_audit->callback([&] { run = [&] { return cmd_bc_audit(g, first_sel, second_sel, alice); }; });

  std::string sweep_alice = "1";
  bool sweep_reports = false;
  auto* sweep = app.add_subcommand("sweep", "Audit all 276 bipartite pure pairs");
  sweep->add_option("--alice", sweep_alice, "Alice sites, 1-based");
  sweep->add_flag("--reports", sweep_reports, "Include every pair's audit in JSON output");
  sweep->callback([&] { run = [&] { return cmd_sweep(g, sweep_alice, sweep_reports); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Output out = run();
    emit(g, out);
    return out.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    const bool input_problem = e.code() == ErrorCode::kParse || e.code() == ErrorCode::kOutOfRange ||
                               e.code() == ErrorCode::kShapeMismatch || e.code() == ErrorCode::kGuardExceeded ||
                               e.code() == ErrorCode::kUnsupported || e.code() == ErrorCode::kNotInCatalog ||
                               e.code() == ErrorCode::kIdenticalStates || e.code() == ErrorCode::kRoleMismatch;
    return input_problem ? kExitUsage : kExitMismatch;
  }
}
