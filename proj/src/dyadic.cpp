#include "prbox/dyadic.hpp"

#include <charconv>
#include <limits>

#include "prbox/error.hpp"

namespace prbox {

namespace {

constexpr int kMaxExponent = 62;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow, "dyadic multiplication overflow");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow, "dyadic addition overflow");
  }
  return out;
}

std::int64_t shift_left(std::int64_t value, int bits) {
  if (bits == 0 || value == 0) return value;
  if (bits >= 63) throw Error(ErrorCode::kOverflow, "dyadic rescale overflow");
  return checked_mul(value, std::int64_t{1} << bits);
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw Error(ErrorCode::kParse, "malformed number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kRoleMismatch: return "role_mismatch";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kNotNormalized: return "not_normalized";
    case ErrorCode::kInvalidConvention: return "invalid_convention";
    case ErrorCode::kInvalidTable: return "invalid_table";
    case ErrorCode::kSignalling: return "no_signalling";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kGuardExceeded: return "guard_exceeded";
    case ErrorCode::kNoSeparatingInput: return "no_separating_input";
    case ErrorCode::kNonDeterministicParity: return "non_deterministic_parity";
    case ErrorCode::kIdenticalStates: return "identical_states";
    case ErrorCode::kNotInCatalog: return "not_in_catalog";
    case ErrorCode::kInexactDivision: return "inexact_division";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

Dyadic Dyadic::from_parts(std::int64_t numerator, int exponent) {
  Dyadic d;
  if (numerator == 0) return d;
  // Negative exponents are integers scaled up.
  if (exponent < 0) {
    d.num_ = shift_left(numerator, -exponent);
    return d;
  }
  while (exponent > 0 && (numerator & 1) == 0) {
    numerator /= 2;
    --exponent;
  }
  if (exponent > kMaxExponent) {
    throw Error(ErrorCode::kOverflow, "dyadic exponent too large");
  }
  d.num_ = numerator;
  d.exp_ = exponent;
  return d;
}

Dyadic Dyadic::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den <= 0 || (den & (den - 1)) != 0) {
    throw Error(ErrorCode::kParse,
                "denominator must be a positive power of two: '" + std::string(text) + "'");
  }
  return from_parts(num, __builtin_ctzll(static_cast<unsigned long long>(den)));
}

Dyadic Dyadic::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::kOverflow, "dyadic negation overflow");
  }
  Dyadic d = *this;
  d.num_ = -num_;
  return d;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  const int e = std::max(exp_, rhs.exp_);
  const std::int64_t lhs_num = shift_left(num_, e - exp_);
  const std::int64_t rhs_num = shift_left(rhs.num_, e - rhs.exp_);
  *this = from_parts(checked_add(lhs_num, rhs_num), e);
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  *this = from_parts(checked_mul(num_, rhs.num_), exp_ + rhs.exp_);
  return *this;
}

Dyadic Dyadic::div_pow2(int k) const { return from_parts(num_, exp_ + k); }

Dyadic Dyadic::divided_by(const Dyadic& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::kInexactDivision, "division by zero");
  // divisor = m / 2^f with m odd, so the quotient is dyadic iff m | num_.
  const std::int64_t m = divisor.num_;
  if (num_ % m != 0) {
    throw Error(ErrorCode::kInexactDivision,
                to_string() + " / " + divisor.to_string() + " is not dyadic");
  }
  return from_parts(num_ / m, exp_ - divisor.exp_);
}

std::string Dyadic::to_string() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << exp_);
}

double Dyadic::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(std::uint64_t{1} << exp_);
}

std::strong_ordering operator<=>(const Dyadic& lhs, const Dyadic& rhs) {
  const Dyadic diff = lhs - rhs;
  return diff.sign() <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Dyadic& value) {
  return os << value.to_string();
}

}  // namespace prbox
