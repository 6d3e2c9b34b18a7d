#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ambigal {

using i64 = std::int64_t;

// Floor and ceiling division for a positive divisor. Built-in division
// truncates toward zero, which is wrong for negative numerators.
constexpr i64 fdiv(i64 x, i64 y) {
  i64 q = x / y;
  if (x % y != 0 && ((x < 0) != (y < 0))) --q;
  return q;
}

constexpr i64 cdiv(i64 x, i64 y) { return -fdiv(-x, y); }

constexpr bool is_odd(i64 x) { return (x & 1) != 0; }

constexpr i64 pmod(i64 x, i64 y) { return x - y * fdiv(x, y); }

enum class ErrorCode {
  InvalidProfile,
  UnsupportedEven,
  BoundaryHit,
  NegativeMultiplicity,
  OrderViolation,
  Ambiguous,
  Infeasible,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidProfile: return "INVALID_PROFILE";
    case ErrorCode::UnsupportedEven: return "UNSUPPORTED_EVEN";
    case ErrorCode::BoundaryHit: return "BOUNDARY_HIT";
    case ErrorCode::NegativeMultiplicity: return "NEGATIVE_MULTIPLICITY";
    case ErrorCode::OrderViolation: return "ORDER_VIOLATION";
    case ErrorCode::Ambiguous: return "AMBIGUOUS";
    case ErrorCode::Infeasible: return "INFEASIBLE";
  }
  return "UNKNOWN";
}

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& what)
      : std::runtime_error(std::string(to_string(c)) + ": " + what), code(c) {}
};

}  // namespace ambigal
