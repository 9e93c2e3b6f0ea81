#include "prbox/box_table.hpp"

#include <set>

#include "prbox/catalog.hpp"
#include "prbox/error.hpp"
#include "site_ops.hpp"

namespace prbox {

namespace {

constexpr int kMaxTableParties = 10;

int require_bit(int b, const char* name) {
  if (b != 0 && b != 1) {
    throw Error(ErrorCode::kOutOfRange, std::string(name) + " must be 0 or 1");
  }
  return b;
}

int parity(unsigned v) { return __builtin_popcount(v) & 1; }

detail::Mat3 inverse(const detail::Mat3& m) {
  const Dyadic det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det.is_zero()) {
    throw Error(ErrorCode::kInvalidConvention, "fiducial effects do not span R^3");
  }
  detail::Mat3 inv;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      // Cofactor of (c, r) for the adjugate.
      const std::size_t r0 = (c + 1) % 3, r1 = (c + 2) % 3;
      const std::size_t c0 = (r + 1) % 3, c1 = (r + 2) % 3;
      const Dyadic cof = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
      inv[r][c] = cof.divided_by(det);
    }
  }
  return inv;
}

}  // namespace

BoxTable::BoxTable(int n_parties) : n_parties_(n_parties) {
  if (n_parties < 1) throw Error(ErrorCode::kDegenerate, "a box needs at least one party");
  if (n_parties > kMaxTableParties) {
    throw Error(ErrorCode::kGuardExceeded, "box party count above " +
                                               std::to_string(kMaxTableParties));
  }
  probs_.assign(n_strings() * n_strings(), Dyadic());
}

const Dyadic& BoxTable::prob(unsigned outputs, unsigned inputs) const {
  if (outputs >= n_strings() || inputs >= n_strings()) {
    throw Error(ErrorCode::kOutOfRange, "bit string out of range");
  }
  return probs_[inputs * n_strings() + outputs];
}

void BoxTable::set(unsigned outputs, unsigned inputs, Dyadic p) {
  if (outputs >= n_strings() || inputs >= n_strings()) {
    throw Error(ErrorCode::kOutOfRange, "bit string out of range");
  }
  probs_[inputs * n_strings() + outputs] = p;
}

std::string bitstring(unsigned packed, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((packed >> (width - 1 - i)) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

unsigned parse_bitstring(const std::string& text, int width) {
  if (static_cast<int>(text.size()) != width) {
    throw Error(ErrorCode::kParse, "bit string '" + text + "' should have length " +
                                       std::to_string(width));
  }
  unsigned out = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw Error(ErrorCode::kParse, "bad bit string '" + text + "'");
    out = (out << 1) | static_cast<unsigned>(ch - '0');
  }
  return out;
}

bool is_no_signalling(const BoxTable& table) {
  const int n = table.n_parties();
  const unsigned strings = static_cast<unsigned>(table.n_strings());
  for (int k = 0; k < n; ++k) {
    const unsigned mask = 1U << (n - 1 - k);
    for (unsigned x = 0; x < strings; ++x) {
      if (x & mask) continue;
      for (unsigned a = 0; a < strings; ++a) {
        if (a & mask) continue;
        const Dyadic with_x0 = table.prob(a, x) + table.prob(a | mask, x);
        const Dyadic with_x1 = table.prob(a, x | mask) + table.prob(a | mask, x | mask);
        if (with_x0 != with_x1) return false;
      }
    }
  }
  return true;
}

InvariantReport check_box_invariants(const BoxTable& table) {
  const unsigned strings = static_cast<unsigned>(table.n_strings());
  for (unsigned x = 0; x < strings; ++x) {
    Dyadic total;
    for (unsigned a = 0; a < strings; ++a) {
      const Dyadic& p = table.prob(a, x);
      if (p.sign() < 0) {
        return {false, "nonnegative",
                "P(" + bitstring(a, table.n_parties()) + "|" + bitstring(x, table.n_parties()) +
                    ") = " + p.to_string()};
      }
      total += p;
    }
    if (total != Dyadic(1)) {
      return {false, "normalized",
              "outputs at input " + bitstring(x, table.n_parties()) + " sum to " +
                  total.to_string()};
    }
  }
  if (!is_no_signalling(table)) {
    return {false, "no_signalling", "a party's marginal depends on another party's input"};
  }
  return {};
}

FiducialConvention::FiducialConvention(std::array<std::array<int, 2>, 2> outcome_effect)
    : outcome_effect_(outcome_effect) {
  auto test_of = [](const std::array<int, 2>& pair_effects) {
    for (int i : pair_effects) {
      if (i < 0 || i > 3) throw Error(ErrorCode::kInvalidConvention, "effect index outside 0..3");
    }
    // b^(i) + b^(i+2) = e; nothing else sums to e.
    if ((pair_effects[0] + 2) % 4 != pair_effects[1]) {
      throw Error(ErrorCode::kInvalidConvention, "outcome effects of an input do not sum to e");
    }
    return pair_effects[0] % 2;
  };
  if (test_of(outcome_effect_[0]) == test_of(outcome_effect_[1])) {
    throw Error(ErrorCode::kInvalidConvention, "both inputs measure the same test");
  }
}

FiducialConvention FiducialConvention::from_id(int id) {
  if (id < 0 || id > 7) throw Error(ErrorCode::kInvalidConvention, "convention id outside 0..7");
  const std::array<int, 2> test_a = {0, 2};
  const std::array<int, 2> test_b = {3, 1};
  auto oriented = [](std::array<int, 2> t, bool flip) {
    if (flip) std::swap(t[0], t[1]);
    return t;
  };
  const bool b_first = (id & 4) != 0;
  return FiducialConvention({oriented(b_first ? test_b : test_a, (id & 2) != 0),
                             oriented(b_first ? test_a : test_b, (id & 1) != 0)});
}

int FiducialConvention::effect_index(int input, int outcome) const {
  return outcome_effect_[static_cast<std::size_t>(require_bit(input, "input"))]
                        [static_cast<std::size_t>(require_bit(outcome, "outcome"))];
}

int FiducialConvention::id() const {
  for (int id = 0; id < 8; ++id) {
    if (from_id(id) == *this) return id;
  }
  return -1;  // unreachable for validated conventions
}

BoxTable state_to_table(const GptTensor& state, const FiducialConvention& conv) {
  if (state.role() != Role::kState) {
    throw Error(ErrorCode::kRoleMismatch, "state_to_table expects a state");
  }
  const int n = state.n_parties();
  BoxTable table(n);
  const unsigned strings = static_cast<unsigned>(table.n_strings());
  std::array<std::array<GptTensor, 2>, 2> local = {{
      {extremal_effect(conv.effect_index(0, 0)), extremal_effect(conv.effect_index(0, 1))},
      {extremal_effect(conv.effect_index(1, 0)), extremal_effect(conv.effect_index(1, 1))},
  }};
  for (unsigned x = 0; x < strings; ++x) {
    for (unsigned a = 0; a < strings; ++a) {
      // Contract one site at a time: s <- b_k · s along the leading axis.
      std::vector<Dyadic> data(state.entries().begin(), state.entries().end());
      std::size_t width = data.size();
      for (int k = 0; k < n; ++k) {
        const GptTensor& eff = local[static_cast<std::size_t>(table.bit(x, k))]
                                    [static_cast<std::size_t>(table.bit(a, k))];
        width /= 3;
        std::vector<Dyadic> next(width);
        for (std::size_t i = 0; i < 3; ++i) {
          if (eff[i].is_zero()) continue;
          for (std::size_t j = 0; j < width; ++j) next[j] += eff[i] * data[i * width + j];
        }
        data = std::move(next);
      }
      table.set(a, x, data[0]);
    }
  }
  return table;
}

GptTensor table_to_state(const BoxTable& table, const FiducialConvention& conv) {
  const InvariantReport report = check_box_invariants(table);
  if (!report.ok) {
    throw Error(report.violated == "no_signalling" ? ErrorCode::kSignalling
                                                   : ErrorCode::kInvalidTable,
                report.violated + ": " + report.detail);
  }
  const int n = table.n_parties();
  const unsigned strings = static_cast<unsigned>(table.n_strings());

  // Per site the functionals (b^(conv(0,0)), b^(conv(1,0)), e) form an
  // invertible matrix F; the state is F^{-1} applied on every axis to the
  // probabilities those functionals produce.
  detail::Mat3 functionals;
  const GptTensor f0 = extremal_effect(conv.effect_index(0, 0));
  const GptTensor f1 = extremal_effect(conv.effect_index(1, 0));
  for (std::size_t c = 0; c < 3; ++c) {
    functionals[0][c] = f0[c];
    functionals[1][c] = f1[c];
    functionals[2][c] = c == 2 ? Dyadic(1) : Dyadic();
  }
  const detail::Mat3 inv = inverse(functionals);

  std::vector<Dyadic> data(tensor_size(n));
  std::vector<int> j(static_cast<std::size_t>(n));
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t rem = flat;
    for (int k = n - 1; k >= 0; --k) {
      j[static_cast<std::size_t>(k)] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    unsigned x = 0, fixed_mask = 0;
    for (int k = 0; k < n; ++k) {
      const unsigned bit = 1U << (n - 1 - k);
      if (j[static_cast<std::size_t>(k)] == 1) x |= bit;
      if (j[static_cast<std::size_t>(k)] != 2) fixed_mask |= bit;
    }
    // Functionals 0 and 1 fix outcome 0; e sums the outcome out.
    Dyadic value;
    for (unsigned a = 0; a < strings; ++a) {
      if (a & fixed_mask) continue;
      value += table.prob(a, x);
    }
    data[flat] = value;
  }
  for (int k = 0; k < n; ++k) detail::apply_on_axis(data, n, k, inv);

  GptTensor state(Role::kState, n, std::move(data));
  if (state_to_table(state, conv) != table) {
    throw Error(ErrorCode::kSignalling, "fiducial reconstruction is inconsistent");
  }
  return state;
}

Dyadic chsh_value(const BoxTable& table) {
  if (table.n_parties() != 2) {
    throw Error(ErrorCode::kShapeMismatch, "CHSH needs a bipartite table");
  }
  Dyadic total;
  for (unsigned x = 0; x < 4; ++x) {
    const int target = (x == 3) ? 1 : 0;  // x·y
    for (unsigned a = 0; a < 4; ++a) {
      if (parity(a) == target) total += table.prob(a, x);
    }
  }
  return total;
}

std::optional<int> deterministic_parity(const BoxTable& table, unsigned inputs) {
  std::set<int> seen;
  for (unsigned a = 0; a < table.n_strings(); ++a) {
    if (table.prob(a, inputs).sign() > 0) seen.insert(parity(a));
  }
  if (seen.size() != 1) return std::nullopt;
  return *seen.begin();
}

BoxTable box_table_single(int alpha, int beta) {
  require_bit(alpha, "alpha");
  require_bit(beta, "beta");
  BoxTable t(1);
  for (unsigned x = 0; x < 2; ++x) {
    t.set(static_cast<unsigned>((alpha & static_cast<int>(x)) ^ beta), x, Dyadic(1));
  }
  return t;
}

BoxTable box_table_local(int alpha, int beta, int gamma, int delta) {
  for (int b : {alpha, beta, gamma, delta}) require_bit(b, "local box parameter");
  BoxTable t(2);
  for (unsigned x = 0; x < 2; ++x) {
    for (unsigned y = 0; y < 2; ++y) {
      const unsigned a = static_cast<unsigned>((alpha & static_cast<int>(x)) ^ beta);
      const unsigned b = static_cast<unsigned>((gamma & static_cast<int>(y)) ^ delta);
      t.set((a << 1) | b, (x << 1) | y, Dyadic(1));
    }
  }
  return t;
}

BoxTable box_table_nonlocal(int alpha, int beta, int gamma) {
  for (int b : {alpha, beta, gamma}) require_bit(b, "non-local box parameter");
  BoxTable t(2);
  for (unsigned x = 0; x < 2; ++x) {
    for (unsigned y = 0; y < 2; ++y) {
      const int rhs = static_cast<int>(x & y) ^ (alpha & static_cast<int>(x)) ^
                      (beta & static_cast<int>(y)) ^ gamma;
      for (unsigned a = 0; a < 4; ++a) {
        if (parity(a) == rhs) t.set(a, (x << 1) | y, kHalf);
      }
    }
  }
  return t;
}

BoxTable tripartite_class_table(int class_id) {
  if (class_id < 44 || class_id > 46) {
    throw Error(ErrorCode::kOutOfRange, "tripartite class must be 44, 45 or 46");
  }
  BoxTable t(3);
  for (unsigned in = 0; in < 8; ++in) {
    const int x = (in >> 2) & 1, y = (in >> 1) & 1, z = in & 1;
    int rhs = 0;
    switch (class_id) {
      case 44: rhs = x & y & z; break;
      case 45: rhs = (x & y) ^ (x & z); break;
      default: rhs = (x & y) ^ (x & z) ^ (y & z); break;
    }
    for (unsigned a = 0; a < 8; ++a) {
      if (parity(a) == rhs) t.set(a, in, kQuarter);
    }
  }
  return t;
}

BoxTable uniform_table(int n_parties) {
  BoxTable t(n_parties);
  const Dyadic p = Dyadic(1).div_pow2(n_parties);
  for (unsigned x = 0; x < t.n_strings(); ++x) {
    for (unsigned a = 0; a < t.n_strings(); ++a) t.set(a, x, p);
  }
  return t;
}

}  // namespace prbox
