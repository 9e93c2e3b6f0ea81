#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prbox/box_table.hpp"
#include "prbox/discrimination.hpp"
#include "prbox/tensor.hpp"
#include "prbox/transforms.hpp"

namespace prbox {

/// Output map a' = a ⊕ α·x ⊕ γ for revealing x' = x ⊕ 1 on a box whose table
/// Alice turned from p_000 into p_{α β γ}. β is 1 whenever the input flips;
/// the identity target gives β = 0 and f = id.
struct CheatParams {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  bool flips_input = false;

  int map_output(int a, int x) const { return flips_input ? a ^ (alpha & x) ^ gamma : a; }
};

/// x_target must be x or x ⊕ 1. (α, γ) are free; (0, 0) is the default.
CheatParams solve_cheat(int x, int x_target, int alpha = 0, int gamma = 0);

/// For every y and every (a, b) supported by p_{αβγ} at (x, y), (f(a), b) is
/// supported by p_000 at (x_target, y).
bool verify_cheat(const CheatParams& params, int x, int x_target);

// Randomness. Every stream is std::mt19937_64 seeded with
// derive_seed(trial_seed, stream_id), so streams are independent of the
// order in which they are consumed.

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

inline constexpr std::uint64_t kDefaultSeed = 0x5052424f58ULL;  // "PRBOX"
/// Box i samples from stream i; Bob's and Alice's choices use these ids.
inline constexpr std::uint64_t kBobStream = 1ULL << 32;
inline constexpr std::uint64_t kAliceStream = (1ULL << 32) + 1;

using Rng = std::mt19937_64;
Rng make_stream(std::uint64_t trial_seed, std::uint64_t stream_id);
int random_bit(Rng& rng);

/// Lazily sampled shared box. A party's output is drawn when it inputs, from
/// the conditional given the outputs already drawn, so the joint outcome
/// follows the table of the current state.
class SharedBox {
 public:
  explicit SharedBox(GptTensor state, FiducialConvention conv = {});

  int n_parties() const { return state_.n_parties(); }
  const GptTensor& state() const { return state_; }
  BoxTable table() const { return state_to_table(state_, conv_); }

  /// Reversible transform on one party's site; refused once that party has
  /// input.
  void apply_local(int party, const SingleSiteTransform& t);
  int input(int party, int x, Rng& rng);
  bool has_input(int party) const;

 private:
  GptTensor state_;
  FiducialConvention conv_;
  std::vector<std::optional<int>> inputs_;
  std::vector<std::optional<int>> outputs_;
};

enum class Protocol { kSingleBox, kBuhrman };
enum class Mode { kHonest, kNaiveCheat, kTransformCheat };

std::string to_string(Protocol p);
std::string to_string(Mode m);
Protocol parse_protocol(const std::string& text);
Mode parse_mode(const std::string& text);

struct BoxRecord {
  int x = 0;
  int a = 0;
  int y = 0;
  int b = 0;
  int x_revealed = 0;
  int a_revealed = 0;
};

struct Transcript {
  Protocol protocol = Protocol::kSingleBox;
  Mode mode = Mode::kHonest;
  int n = 0;  // Buhrman uses 2n + 1 boxes; 0 for the single box
  int committed = 0;
  int revealed = 0;
  std::vector<BoxRecord> boxes;
  std::optional<int> parity_message;  // A, Buhrman only
  CheatParams cheat;
  std::uint64_t seed = 0;
  bool accepted = false;
};

/// Bob's checks, recomputed from the stored fields only.
///   single box: a' ⊕ b = x'·y.
///   Buhrman: x'_i·y_i = a'_i ⊕ b_i for all i, |x'_1..x'_2n|_11 + x'_{2n+1} + c'
///   even, and A = ⊕ a'_i.
bool bob_verdict(const Transcript& t);

/// Number of "11" substrings starting at odd 1-indexed positions.
int count_11_odd(const std::vector<int>& bits);
int count_11_odd(const std::string& bits);

/// State whose table under `conv` is p_000.
GptTensor honest_box_state(const FiducialConvention& conv = {});
/// Site-0 transform turning the p_000 box into p_{α 1 γ}.
SingleSiteTransform cheat_transform(int alpha, int gamma, const FiducialConvention& conv = {});

/// Alice's input is the committed bit c. Naive cheat reveals x' = c ⊕ 1 with
/// a' = a; transform cheat first moves the box to p_{α1γ} and reveals
/// a' = a ⊕ αx ⊕ γ.
Transcript run_single_box(int c, Mode mode, std::uint64_t seed,
                          const FiducialConvention& conv = {}, int alpha = 0, int gamma = 0);

/// 2n + 1 boxes. Honest: x_1..x_2n uniform among strings with |x|_11 even,
/// x_{2n+1} = c. Transform cheat: x_1..x_2n uniform among strings whose
/// complement has |·|_11 even, x_{2n+1} = c, every box moved to p_{α1γ},
/// reveal c' = c ⊕ 1 and x' = x ⊕ 1.
Transcript run_buhrman(int n, int c, Mode mode, std::uint64_t seed,
                       const FiducialConvention& conv = {}, int alpha = 0, int gamma = 0);

struct RunConfig {
  Protocol protocol = Protocol::kSingleBox;
  Mode mode = Mode::kHonest;
  int n = 1;
  int bit = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 1;
  unsigned jobs = 1;
  FiducialConvention conv;
  int alpha = 0;
  int gamma = 0;
};

struct RunSummary {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  std::size_t revealed_flipped = 0;  // accepted trials revealing c ⊕ 1
  std::vector<Transcript> transcripts;
};

/// Trial i runs with derive_seed(config.seed, i). Results are merged in trial
/// order whatever the job count.
RunSummary run_trials(const RunConfig& config, bool keep_transcripts = false);

/// Honest: every trial accepted with the committed bit. Transform cheat:
/// every trial accepted with the flipped bit. Naive cheat: acceptance rate
/// within 3σ of 1/2.
bool meets_expectation(const RunConfig& config, const RunSummary& summary);

struct AuditReport {
  std::string psi0_id;
  std::string psi1_id;
  std::vector<int> alice_sites;
  std::vector<int> bob_sites;
  bool correct = false;
  bool concealing = false;
  bool binding = false;
  std::optional<TwoOutcomePovm> povm;
  std::optional<ReversibleTransform> cheat_witness;
};

/// correct: a perfectly discriminating POVM exists. concealing: the two
/// states have equal marginals on every nonempty subset of Bob's sites
/// (vacuous with no Bob sites). binding: no reversible transform supported on
/// Alice's sites maps Ψ0 to Ψ1. Inputs must be catalog-pure.
AuditReport audit_protocol(const GptTensor& psi0, const GptTensor& psi1,
                           const std::vector<int>& alice_sites,
                           const FiducialConvention& conv = {});

/// Audits for every nonempty set of Alice sites, in increasing bitmask order.
std::vector<AuditReport> audit_all_splits(const GptTensor& psi0, const GptTensor& psi1,
                                          const FiducialConvention& conv = {});

struct SweepSummary {
  std::size_t pairs = 0;
  /// Indexed by 4·correct + 2·concealing + binding.
  std::array<std::size_t, 8> counts{};
  std::size_t concealing = 0;
  std::size_t perfect = 0;  // correct, concealing and binding
  std::vector<AuditReport> reports;
};

/// Audits all 276 unordered pairs of the 24 bipartite pure states.
SweepSummary impossibility_sweep(const std::vector<int>& alice_sites = {0},
                                 const FiducialConvention& conv = {}, unsigned jobs = 1);

}  // namespace prbox
