#include "prbox/commitment.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "prbox/catalog.hpp"
#include "prbox/error.hpp"
#include "prbox/purification.hpp"

namespace prbox {

namespace {

__extension__ using u128 = unsigned __int128;

void require_bit(int v, const char* what) {
  if (v != 0 && v != 1) throw Error(ErrorCode::kOutOfRange, std::string(what) + " must be 0 or 1");
}

// True with probability num/den, exactly, from one 64-bit draw.
bool below(std::uint64_t u, const Dyadic& num, const Dyadic& den) {
  if (num.exponent() > 40 || den.exponent() > 40) {
    throw Error(ErrorCode::kOverflow, "sampling probability has too fine a denominator");
  }
  // u / 2^64 < num / den  <=>  u · n_den · 2^e_num < n_num · 2^(64 + e_den)
  const u128 lhs = (u128{u} * static_cast<u128>(den.numerator())) << num.exponent();
  const u128 rhs = static_cast<u128>(num.numerator()) << (64 + den.exponent());
  return lhs < rhs;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < count; i += jobs) fn(i);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<int> complement_sites(const std::vector<int>& sites, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (std::find(sites.begin(), sites.end(), i) == sites.end()) out.push_back(i);
  }
  return out;
}

std::string state_label(const GptTensor& s, const FiducialConvention& conv) {
  if (auto id = catalog_id_of(s)) return *id;
  if (s.n_parties() == 3) {
    for (int c : {44, 45, 46}) {
      if (tripartite_class_state(c, conv) == s) return "class" + std::to_string(c);
    }
    for (const auto& entry : pure_catalog(PurificationCatalog::kBipartite24PlusTripartite, conv)) {
      if (entry.state == s) return entry.id;
    }
  }
  return "tripartite-pure";
}

std::vector<int> draw_constrained(int length, bool complement, Rng& rng) {
  std::vector<int> x(static_cast<std::size_t>(length));
  while (true) {
    std::vector<int> probe(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = random_bit(rng);
      probe[i] = complement ? x[i] ^ 1 : x[i];
    }
    if (count_11_odd(probe) % 2 == 0) return x;
  }
}

}  // namespace

CheatParams solve_cheat(int x, int x_target, int alpha, int gamma) {
  require_bit(x, "x");
  require_bit(x_target, "x_target");
  require_bit(alpha, "alpha");
  require_bit(gamma, "gamma");
  if (x == x_target) return {};
  return {alpha, 1, gamma, true};
}

bool verify_cheat(const CheatParams& params, int x, int x_target) {
  const BoxTable before = box_table_nonlocal(params.alpha, params.beta, params.gamma);
  const BoxTable target = box_table_nonlocal(0, 0, 0);
  for (int y = 0; y < 2; ++y) {
    const unsigned in = static_cast<unsigned>((x << 1) | y);
    const unsigned in_target = static_cast<unsigned>((x_target << 1) | y);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (before.prob(static_cast<unsigned>((a << 1) | b), in).is_zero()) continue;
        const int revealed = params.map_output(a, x);
        if (target.prob(static_cast<unsigned>((revealed << 1) | b), in_target).is_zero()) return false;
      }
    }
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(parent ^ splitmix64(index));
}

Rng make_stream(std::uint64_t trial_seed, std::uint64_t stream_id) {
  return Rng(derive_seed(trial_seed, stream_id));
}

int random_bit(Rng& rng) { return static_cast<int>(rng() >> 63); }

SharedBox::SharedBox(GptTensor state, FiducialConvention conv)
    : state_(std::move(state)),
      conv_(conv),
      inputs_(static_cast<std::size_t>(state_.n_parties())),
      outputs_(static_cast<std::size_t>(state_.n_parties())) {
  if (state_.role() != Role::kState) throw Error(ErrorCode::kRoleMismatch, "boxes hold states");
}

bool SharedBox::has_input(int party) const {
  if (party < 0 || party >= n_parties()) throw Error(ErrorCode::kOutOfRange, "party out of range");
  return inputs_[static_cast<std::size_t>(party)].has_value();
}

void SharedBox::apply_local(int party, const SingleSiteTransform& t) {
  if (has_input(party)) {
    throw Error(ErrorCode::kUnsupported, "party has already input into the box");
  }
  state_ = apply(ReversibleTransform::on_site(n_parties(), party, t), state_);
}

int SharedBox::input(int party, int x, Rng& rng) {
  require_bit(x, "input");
  if (has_input(party)) throw Error(ErrorCode::kUnsupported, "party has already input into the box");
  // Contract per-site effect vectors with the state without building the
  // product tensor.
  auto probability = [&](std::optional<int> own_outcome) {
    const int n = n_parties();
    std::vector<std::array<Dyadic, 3>> site(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const auto& in = inputs_[static_cast<std::size_t>(k)];
      std::optional<int> index;
      if (k == party && own_outcome) {
        index = conv_.effect_index(x, *own_outcome);
      } else if (k != party && in) {
        index = conv_.effect_index(*in, *outputs_[static_cast<std::size_t>(k)]);
      }
      auto& v = site[static_cast<std::size_t>(k)];
      if (index) {
        const GptTensor b = extremal_effect(*index);
        std::copy(b.entries().begin(), b.entries().end(), v.begin());
      } else {
        v = {Dyadic(), Dyadic(), Dyadic(1)};
      }
    }
    Dyadic total;
    const auto entries = state_.entries();
    for (std::size_t flat = 0; flat < entries.size(); ++flat) {
      if (entries[flat].is_zero()) continue;
      Dyadic term = entries[flat];
      std::size_t rest = flat;
      for (int k = n - 1; k >= 0 && !term.is_zero(); --k) {
        term *= site[static_cast<std::size_t>(k)][rest % 3];
        rest /= 3;
      }
      total += term;
    }
    return total;
  };
  const Dyadic p_prior = probability(std::nullopt);
  const Dyadic p_zero = probability(0);
  if (p_prior.sign() <= 0) throw Error(ErrorCode::kDegenerate, "conditioning on a null event");
  const int a = below(rng(), p_zero, p_prior) ? 0 : 1;
  inputs_[static_cast<std::size_t>(party)] = x;
  outputs_[static_cast<std::size_t>(party)] = a;
  return a;
}

std::string to_string(Protocol p) { return p == Protocol::kSingleBox ? "single" : "buhrman"; }

std::string to_string(Mode m) {
  switch (m) {
    case Mode::kHonest: return "honest";
    case Mode::kNaiveCheat: return "naive_cheat";
    default: return "transform_cheat";
  }
}

Protocol parse_protocol(const std::string& text) {
  if (text == "single") return Protocol::kSingleBox;
  if (text == "buhrman") return Protocol::kBuhrman;
  throw Error(ErrorCode::kParse, "unknown protocol '" + text + "'");
}

Mode parse_mode(const std::string& text) {
  if (text == "honest") return Mode::kHonest;
  if (text == "naive_cheat") return Mode::kNaiveCheat;
  if (text == "transform_cheat") return Mode::kTransformCheat;
  throw Error(ErrorCode::kParse, "unknown mode '" + text + "'");
}

int count_11_odd(const std::vector<int>& bits) {
  if (bits.size() % 2 != 0) throw Error(ErrorCode::kOutOfRange, "string length must be even");
  int count = 0;
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2) count += (bits[i] == 1 && bits[i + 1] == 1);
  return count;
}

int count_11_odd(const std::string& bits) {
  std::vector<int> v;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw Error(ErrorCode::kParse, "not a bit string");
    v.push_back(ch - '0');
  }
  return count_11_odd(v);
}

bool bob_verdict(const Transcript& t) {
  for (const auto& r : t.boxes) {
    if ((r.x_revealed & r.y) != (r.a_revealed ^ r.b)) return false;
  }
  if (t.protocol == Protocol::kSingleBox) {
    return t.boxes.size() == 1 && t.revealed == t.boxes.front().x_revealed;
  }
  const std::size_t m = static_cast<std::size_t>(2 * t.n + 1);
  if (t.n < 1 || t.boxes.size() != m || !t.parity_message) return false;
  std::vector<int> prefix;
  int parity = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i + 1 < m) prefix.push_back(t.boxes[i].x_revealed);
    parity ^= t.boxes[i].a_revealed;
  }
  if ((count_11_odd(prefix) + t.boxes.back().x_revealed + t.revealed) % 2 != 0) return false;
  return *t.parity_message == parity;
}

GptTensor honest_box_state(const FiducialConvention& conv) {
  static const std::array<int, 8> index = [] {
    std::array<int, 8> out{};
    for (int id = 0; id < 8; ++id) {
      out[static_cast<std::size_t>(id)] = nonlocal_index_lookup(FiducialConvention::from_id(id))[0];
    }
    return out;
  }();
  return bipartite_state(index[static_cast<std::size_t>(conv.id())]);
}

SingleSiteTransform cheat_transform(int alpha, int gamma, const FiducialConvention& conv) {
  require_bit(alpha, "alpha");
  require_bit(gamma, "gamma");
  // Indexed by convention id, then 2α + γ.
  static const auto table = [] {
    std::array<std::array<std::optional<SingleSiteTransform>, 4>, 8> out{};
    const BoxTable honest = box_table_nonlocal(0, 0, 0);
    for (int id = 0; id < 8; ++id) {
      const auto c = FiducialConvention::from_id(id);
      for (int code = 0; code < 4; ++code) {
        const BoxTable target = box_table_nonlocal(code >> 1, 1, code & 1);
        for (const auto& u : SingleSiteTransform::all()) {
          if (transform_table(ReversibleTransform::on_site(2, 0, u), honest, c) == target) {
            out[static_cast<std::size_t>(id)][static_cast<std::size_t>(code)] = u;
            break;
          }
        }
      }
    }
    return out;
  }();
  const auto& u = table[static_cast<std::size_t>(conv.id())][static_cast<std::size_t>(2 * alpha + gamma)];
  if (!u) throw Error(ErrorCode::kInvalidConvention, "no site-0 transform reaches the target box");
  return *u;
}

Transcript run_single_box(int c, Mode mode, std::uint64_t seed, const FiducialConvention& conv,
                          int alpha, int gamma) {
  require_bit(c, "committed bit");
  Transcript t;
  t.protocol = Protocol::kSingleBox;
  t.mode = mode;
  t.committed = c;
  t.seed = seed;

  SharedBox box(honest_box_state(conv), conv);
  Rng box_rng = make_stream(seed, 0);
  Rng bob_rng = make_stream(seed, kBobStream);
  if (mode == Mode::kTransformCheat) {
    box.apply_local(0, cheat_transform(alpha, gamma, conv));
    t.cheat = solve_cheat(c, c ^ 1, alpha, gamma);
  }
  BoxRecord r;
  r.x = c;
  r.a = box.input(0, r.x, box_rng);
  r.y = random_bit(bob_rng);
  r.b = box.input(1, r.y, box_rng);
  r.x_revealed = mode == Mode::kHonest ? r.x : r.x ^ 1;
  r.a_revealed = t.cheat.map_output(r.a, r.x);
  t.boxes.push_back(r);
  t.revealed = r.x_revealed;
  t.accepted = bob_verdict(t);
  return t;
}

Transcript run_buhrman(int n, int c, Mode mode, std::uint64_t seed, const FiducialConvention& conv,
                       int alpha, int gamma) {
  require_bit(c, "committed bit");
  if (n < 1) throw Error(ErrorCode::kOutOfRange, "Buhrman protocol needs n >= 1");
  if (mode == Mode::kNaiveCheat) {
    throw Error(ErrorCode::kUnsupported, "Buhrman runs are honest or transform_cheat");
  }
  const bool cheat = mode == Mode::kTransformCheat;
  Transcript t;
  t.protocol = Protocol::kBuhrman;
  t.mode = mode;
  t.n = n;
  t.committed = c;
  t.seed = seed;
  if (cheat) t.cheat = solve_cheat(0, 1, alpha, gamma);

  Rng alice_rng = make_stream(seed, kAliceStream);
  Rng bob_rng = make_stream(seed, kBobStream);
  std::vector<int> x = draw_constrained(2 * n, cheat, alice_rng);
  x.push_back(c);

  const GptTensor honest = honest_box_state(conv);
  const SingleSiteTransform u = cheat ? cheat_transform(alpha, gamma, conv) : SingleSiteTransform();
  int parity = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    SharedBox box(honest, conv);
    if (cheat) box.apply_local(0, u);
    Rng box_rng = make_stream(seed, i);
    BoxRecord r;
    r.x = x[i];
    r.a = box.input(0, r.x, box_rng);
    r.a_revealed = t.cheat.map_output(r.a, r.x);
    r.x_revealed = cheat ? r.x ^ 1 : r.x;
    parity ^= r.a_revealed;
    r.y = random_bit(bob_rng);
    r.b = box.input(1, r.y, box_rng);
    t.boxes.push_back(r);
  }
  t.parity_message = parity;
  t.revealed = cheat ? c ^ 1 : c;
  t.accepted = bob_verdict(t);
  return t;
}

RunSummary run_trials(const RunConfig& config, bool keep_transcripts) {
  std::vector<Transcript> results(config.trials);
  parallel_for(config.trials, config.jobs, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(config.seed, i);
    results[i] = config.protocol == Protocol::kSingleBox
                     ? run_single_box(config.bit, config.mode, seed, config.conv, config.alpha,
                                      config.gamma)
                     : run_buhrman(config.n, config.bit, config.mode, seed, config.conv,
                                   config.alpha, config.gamma);
  });
  RunSummary summary;
  summary.trials = config.trials;
  for (const auto& t : results) {
    if (!t.accepted) continue;
    ++summary.accepted;
    if (t.revealed != t.committed) ++summary.revealed_flipped;
  }
  if (keep_transcripts) summary.transcripts = std::move(results);
  return summary;
}

bool meets_expectation(const RunConfig& config, const RunSummary& summary) {
  switch (config.mode) {
    case Mode::kHonest:
      return summary.accepted == summary.trials && summary.revealed_flipped == 0;
    case Mode::kTransformCheat:
      return summary.accepted == summary.trials && summary.revealed_flipped == summary.trials;
    default: {
      // |accepted − T/2| ≤ 3·sqrt(T/4)  <=>  (2·accepted − T)² ≤ 9·T
      const auto deviation = static_cast<long double>(2 * static_cast<long long>(summary.accepted) -
                                                      static_cast<long long>(summary.trials));
      return deviation * deviation <= 9.0L * static_cast<long double>(summary.trials);
    }
  }
}

AuditReport audit_protocol(const GptTensor& psi0, const GptTensor& psi1,
                           const std::vector<int>& alice_sites, const FiducialConvention& conv) {
  if (psi0.n_parties() != psi1.n_parties()) {
    throw Error(ErrorCode::kShapeMismatch, "audit states have different party counts");
  }
  if (!is_catalog_pure(psi0) || !is_catalog_pure(psi1)) {
    throw Error(ErrorCode::kNotInCatalog, "audits take catalog pure states");
  }
  if (psi0 == psi1) throw Error(ErrorCode::kIdenticalStates, "audit states are identical");
  const int n = psi0.n_parties();
  AuditReport report;
  report.psi0_id = state_label(psi0, conv);
  report.psi1_id = state_label(psi1, conv);
  for (int s : alice_sites) {
    if (s < 0 || s >= n) throw Error(ErrorCode::kOutOfRange, "Alice site out of range");
    if (std::find(report.alice_sites.begin(), report.alice_sites.end(), s) == report.alice_sites.end()) {
      report.alice_sites.push_back(s);
    }
  }
  std::sort(report.alice_sites.begin(), report.alice_sites.end());
  report.bob_sites = complement_sites(report.alice_sites, n);

  try {
    auto povm = discriminating_povm(psi0, psi1, conv);
    report.correct = verify_perfect_discrimination(povm, psi0, psi1);
    report.povm = std::move(povm);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoSeparatingInput && e.code() != ErrorCode::kNonDeterministicParity) throw;
    report.correct = false;
  }

  report.concealing = true;
  const auto& bob = report.bob_sites;
  for (unsigned mask = 1; mask < (1U << bob.size()) && report.concealing; ++mask) {
    std::vector<int> kept;
    for (std::size_t i = 0; i < bob.size(); ++i) {
      if ((mask >> i) & 1U) kept.push_back(bob[i]);
    }
    const auto discard = complement_sites(kept, n);
    report.concealing = marginalize(psi0, discard) == marginalize(psi1, discard);
  }

  report.cheat_witness = locally_connected(psi0, psi1, report.alice_sites);
  report.binding = !report.cheat_witness.has_value();
  return report;
}

std::vector<AuditReport> audit_all_splits(const GptTensor& psi0, const GptTensor& psi1,
                                          const FiducialConvention& conv) {
  std::vector<AuditReport> out;
  const int n = psi0.n_parties();
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    std::vector<int> alice;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) alice.push_back(i);
    }
    out.push_back(audit_protocol(psi0, psi1, alice, conv));
  }
  return out;
}

SweepSummary impossibility_sweep(const std::vector<int>& alice_sites,
                                 const FiducialConvention& conv, unsigned jobs) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 24; ++i) {
    for (int j = i + 1; j < 24; ++j) pairs.emplace_back(i, j);
  }
  SweepSummary summary;
  summary.reports.resize(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t k) {
    summary.reports[k] = audit_protocol(bipartite_state(pairs[k].first),
                                        bipartite_state(pairs[k].second), alice_sites, conv);
  });
  summary.pairs = pairs.size();
  for (const auto& r : summary.reports) {
    ++summary.counts[static_cast<std::size_t>(4 * r.correct + 2 * r.concealing + r.binding)];
    summary.concealing += r.concealing;
    summary.perfect += r.correct && r.concealing && r.binding;
  }
  return summary;
}

}  // namespace prbox
