#include <gtest/gtest.h>

#include <set>

#include "prbox/catalog.hpp"
#include "prbox/commitment.hpp"
#include "prbox/error.hpp"

namespace prbox {
namespace {

// Reference count over 1-indexed odd starts, written from the definition.
int reference_count(const std::vector<int>& x) {
  int count = 0;
  for (std::size_t i = 1; i + 1 <= x.size(); i += 2) count += (x[i - 1] == 1 && x[i] == 1);
  return count;
}

TEST(Count11, Examples) {
  EXPECT_EQ(count_11_odd(std::string("1100")), 1);
  EXPECT_EQ(count_11_odd(std::string("0110")), 0);
  EXPECT_EQ(count_11_odd(std::string("")), 0);
  EXPECT_EQ(count_11_odd(std::string("111111")), 3);
  EXPECT_THROW(count_11_odd(std::string("110")), Error);
  EXPECT_THROW(count_11_odd(std::string("1x")), Error);
  for (unsigned v = 0; v < 256; ++v) {
    std::vector<int> bits;
    for (int i = 7; i >= 0; --i) bits.push_back((v >> i) & 1);
    EXPECT_EQ(count_11_odd(bits), reference_count(bits));
  }
}

TEST(Cheat, SolveAndVerify) {
  const auto p = solve_cheat(0, 1);
  EXPECT_TRUE(p.flips_input);
  EXPECT_EQ(p.beta, 1);
  for (int a = 0; a < 2; ++a) EXPECT_EQ(p.map_output(a, 0), a);
  const auto q = solve_cheat(1, 0, 1, 1);
  for (int a = 0; a < 2; ++a) EXPECT_EQ(q.map_output(a, 1), a ^ 1 ^ 1);
  EXPECT_TRUE(verify_cheat(q, 1, 0));
  const auto id = solve_cheat(1, 1);
  EXPECT_FALSE(id.flips_input);
  EXPECT_EQ(id.map_output(1, 1), 1);
  for (int x = 0; x < 2; ++x)
    for (int al = 0; al < 2; ++al)
      for (int ga = 0; ga < 2; ++ga) EXPECT_TRUE(verify_cheat(solve_cheat(x, x ^ 1, al, ga), x, x ^ 1));
  CheatParams wrong = solve_cheat(0, 1);
  wrong.beta = 0;
  EXPECT_FALSE(verify_cheat(wrong, 0, 1));
  EXPECT_THROW(solve_cheat(0, 2), Error);
}

TEST(Rng, StreamsAreFixed) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
  Rng a = make_stream(5, 0), b = make_stream(5, 0);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
  // splitmix64 reference value for input 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(SharedBox, JointStatisticsFollowTable) {
  const GptTensor pr = honest_box_state();
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (std::uint64_t s = 0; s < 200; ++s) {
        SharedBox box(pr);
        Rng r0 = make_stream(s, 0), r1 = make_stream(s, 1);
        const int a = box.input(0, x, r0);
        const int b = box.input(1, y, r1);
        EXPECT_EQ(a ^ b, x & y);
      }
    }
  }
  SharedBox box(pr);
  Rng r = make_stream(0, 0);
  box.input(0, 0, r);
  EXPECT_TRUE(box.has_input(0));
  EXPECT_THROW(box.input(0, 1, r), Error);
  EXPECT_THROW(box.apply_local(0, SingleSiteTransform(1, 1)), Error);
  EXPECT_NO_THROW(box.apply_local(1, SingleSiteTransform(1, 1)));
  EXPECT_EQ(state_to_table(honest_box_state()), box_table_nonlocal(0, 0, 0));
}

TEST(SharedBox, CheatTransformReachesTarget) {
  for (int id = 0; id < 8; ++id) {
    const auto conv = FiducialConvention::from_id(id);
    for (int al = 0; al < 2; ++al) {
      for (int ga = 0; ga < 2; ++ga) {
        const auto t = ReversibleTransform::on_site(2, 0, cheat_transform(al, ga, conv));
        EXPECT_EQ(state_to_table(apply(t, honest_box_state(conv)), conv), box_table_nonlocal(al, 1, ga));
      }
    }
  }
}

TEST(SingleBox, PerTrialVerdicts) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    for (int c = 0; c < 2; ++c) {
      const auto h = run_single_box(c, Mode::kHonest, s);
      EXPECT_TRUE(h.accepted);
      EXPECT_EQ(h.revealed, c);
      const auto t = run_single_box(c, Mode::kTransformCheat, s, {}, static_cast<int>(s & 1), static_cast<int>((s >> 1) & 1));
      EXPECT_TRUE(t.accepted);
      EXPECT_EQ(t.revealed, c ^ 1);
      const auto n = run_single_box(c, Mode::kNaiveCheat, s);
      EXPECT_EQ(n.revealed, c ^ 1);
      // Naive cheat fails exactly when Bob's y is 1.
      EXPECT_EQ(n.accepted, n.boxes[0].y == 0);
    }
  }
}

TEST(Buhrman, PerTrialVerdictsAndBookkeeping) {
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t s = 0; s < 40; ++s) {
      for (int c = 0; c < 2; ++c) {
        const auto h = run_buhrman(n, c, Mode::kHonest, s);
        ASSERT_EQ(h.boxes.size(), static_cast<std::size_t>(2 * n + 1));
        EXPECT_TRUE(h.accepted);
        EXPECT_EQ(h.revealed, c);
        std::vector<int> x;
        for (int i = 0; i < 2 * n; ++i) x.push_back(h.boxes[i].x);
        EXPECT_EQ((reference_count(x) + h.boxes[2 * n].x + c) % 2, 0);

        const auto t = run_buhrman(n, c, Mode::kTransformCheat, s);
        EXPECT_TRUE(t.accepted);
        EXPECT_EQ(t.revealed, c ^ 1);
        std::vector<int> xr;
        for (int i = 0; i < 2 * n; ++i) xr.push_back(t.boxes[i].x_revealed);
        EXPECT_EQ((reference_count(xr) + t.boxes[2 * n].x_revealed + t.revealed) % 2, 0);
        for (const auto& b : t.boxes) EXPECT_EQ(b.x_revealed, b.x ^ 1);
      }
    }
  }
  EXPECT_THROW(run_buhrman(0, 0, Mode::kHonest, 1), Error);
  EXPECT_THROW(run_buhrman(2, 0, Mode::kNaiveCheat, 1), Error);
}

TEST(Transcript, ReplayAndTampering) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto t = run_buhrman(3, 1, Mode::kTransformCheat, s);
    EXPECT_EQ(bob_verdict(t), t.accepted);
    EXPECT_EQ(run_buhrman(3, 1, Mode::kTransformCheat, s).boxes.size(), t.boxes.size());
    const auto again = run_buhrman(3, 1, Mode::kTransformCheat, s);
    for (std::size_t i = 0; i < t.boxes.size(); ++i) {
      EXPECT_EQ(again.boxes[i].a, t.boxes[i].a);
      EXPECT_EQ(again.boxes[i].y, t.boxes[i].y);
    }
    for (std::size_t i = 0; i < t.boxes.size(); ++i) {
      auto tampered = t;
      tampered.boxes[i].a_revealed ^= 1;
      EXPECT_FALSE(bob_verdict(tampered)) << s << " box " << i;
    }
    auto flipped = t;
    flipped.revealed ^= 1;
    EXPECT_FALSE(bob_verdict(flipped));
    auto wrong_a = t;
    wrong_a.parity_message = *t.parity_message ^ 1;
    EXPECT_FALSE(bob_verdict(wrong_a));
  }
  const auto single = run_single_box(0, Mode::kHonest, 3);
  auto tampered = single;
  tampered.boxes[0].a_revealed ^= 1;
  EXPECT_FALSE(bob_verdict(tampered));
}

TEST(RunTrials, JobCountDoesNotChangeResults) {
  RunConfig cfg;
  cfg.protocol = Protocol::kBuhrman;
  cfg.mode = Mode::kTransformCheat;
  cfg.n = 2;
  cfg.trials = 300;
  cfg.seed = 11;
  const auto one = run_trials(cfg, true);
  cfg.jobs = 4;
  const auto four = run_trials(cfg, true);
  ASSERT_EQ(one.transcripts.size(), four.transcripts.size());
  for (std::size_t i = 0; i < one.transcripts.size(); ++i) {
    EXPECT_EQ(one.transcripts[i].seed, four.transcripts[i].seed);
    EXPECT_EQ(one.transcripts[i].seed, derive_seed(11, i));
  }
  EXPECT_EQ(one.accepted, 300u);
  EXPECT_EQ(one.revealed_flipped, 300u);
  EXPECT_TRUE(meets_expectation(cfg, one));
}

TEST(Audit, Examples) {
  const auto a = audit_protocol(bipartite_state(16), bipartite_state(17), {0});
  EXPECT_TRUE(a.correct);
  EXPECT_TRUE(a.concealing);
  EXPECT_FALSE(a.binding);
  ASSERT_TRUE(a.cheat_witness.has_value());
  EXPECT_EQ(a.cheat_witness->sites()[0], SingleSiteTransform(1, 1));
  const auto b = audit_protocol(bipartite_state(0), bipartite_state(5), {0});
  EXPECT_TRUE(b.correct);
  EXPECT_FALSE(b.concealing);
  EXPECT_THROW(audit_protocol(maximally_mixed(2), bipartite_state(5), {0}), Error);
  EXPECT_THROW(audit_protocol(bipartite_state(5), bipartite_state(5), {0}), Error);
  for (const auto& r : audit_all_splits(tripartite_class_state(44), tripartite_class_state(45))) {
    EXPECT_TRUE(r.correct && r.concealing && r.binding);
    EXPECT_FALSE(r.cheat_witness.has_value());
  }
}

TEST(Audit, SweepHasNoPerfectPair) {
  const auto s = impossibility_sweep();
  EXPECT_EQ(s.pairs, 276u);
  EXPECT_EQ(s.perfect, 0u);
  std::size_t total = 0;
  for (auto c : s.counts) total += c;
  EXPECT_EQ(total, 276u);
  for (const auto& r : s.reports) {
    if (!r.concealing) continue;
    // Concealing needs equal Bob marginals; check them directly.
    const auto p0 = find_catalog_entry(r.psi0_id)->tensor;
    const auto p1 = find_catalog_entry(r.psi1_id)->tensor;
    const std::vector<int> alice = {0};
    EXPECT_EQ(marginalize(p0, alice), marginalize(p1, alice));
  }
}

}  // namespace
}  // namespace prbox
