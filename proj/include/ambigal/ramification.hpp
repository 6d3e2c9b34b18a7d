#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"

namespace ambigal {

enum class Parity { Odd, Even, Mixed };

struct Profile {
  int n = 3;
  i64 e0 = 1;
  std::vector<i64> breaks;
  i64 f_exp = 1;

  int s() const { return static_cast<int>(breaks.size()); }
  i64 b(int k) const { return breaks.at(static_cast<std::size_t>(k - 1)); }

  Parity parity() const {
    if (breaks.empty()) return Parity::Odd;
    bool odd = is_odd(breaks.front());
    for (i64 x : breaks)
      if (is_odd(x) != odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
  }

  static Profile triple(i64 e0, i64 b1, i64 b2, i64 b3) { return {3, e0, {b1, b2, b3}, 1}; }
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  bool unsupported_even() const {
    for (auto& v : violations)
      if (v.code == "UNSUPPORTED_EVEN") return true;
    return false;
  }
};

// |G| = 8, |G_1| = 4 with b1 = 2e0, b2 = 4e0: the one even configuration handled.
inline bool is_even_config(const Profile& p) {
  return p.n == 3 && p.s() == 2 && p.e0 >= 1 && p.breaks[0] == 2 * p.e0 && p.breaks[1] == 4 * p.e0;
}

namespace detail {

inline bool b2_admissible(i64 e0, i64 b1, i64 b2) {
  if (b2 == 3 * b1 || b2 == 4 * e0 - b1) return true;
  return pmod(b2 - b1, 4) == 0 && 3 * b1 < b2 && b2 < 4 * e0 - b1;
}

inline bool b3_admissible(i64 e0, i64 b1, i64 b2, i64 b3) {
  i64 lo = 3 * b2 + 2 * b1, hi = 8 * e0 - b2 - 2 * b1;
  if (b3 == lo || b3 == hi) return true;
  return pmod(b3 - (2 * b1 - b2), 8) == 0 && lo < b3 && b3 < hi;
}

}  // namespace detail

inline ValidationReport validate_profile(const Profile& p) {
  ValidationReport r;
  auto fail = [&](std::string code, std::string msg) {
    r.ok = false;
    r.violations.push_back({std::move(code), std::move(msg)});
  };
  if (p.n < 0 || p.n > 3) fail("N_RANGE", "n must be in 0..3");
  if (p.e0 < 1) fail("E0_RANGE", "e0 must be positive");
  if (p.f_exp < 1) fail("F_EXP_RANGE", "f_exp must be positive");
  if (p.s() > p.n) fail("S_RANGE", "more breaks than n");
  for (std::size_t k = 0; k < p.breaks.size(); ++k) {
    if (p.breaks[k] < 1) fail("BREAK_POSITIVE", "breaks must be positive");
    if (k > 0 && p.breaks[k] <= p.breaks[k - 1]) fail("BREAK_ORDER", "breaks not strictly increasing");
  }
  if (!r.ok) return r;

  Parity par = p.parity();
  if (par == Parity::Mixed) {
    fail("MIXED_PARITY", "parity mixed");
    return r;
  }
  if (par == Parity::Even) {
    if (!is_even_config(p)) fail("UNSUPPORTED_EVEN", "unsupported even configuration");
    return r;
  }
  if (p.s() == 0) return r;

  const i64 e0 = p.e0, b1 = p.b(1);
  if (b1 > 2 * e0 - 1) fail("B1_RANGE", "b1 out of range");
  if (p.s() < 2 || !r.ok) return r;

  const i64 b2 = p.b(2);
  if (b1 >= e0) {
    if (b2 != b1 + 2 * e0) fail("B2_STABLE", "b2 must equal b1+2e0");
  } else if (b2 < 3 * b1 || b2 > 4 * e0 - b1) {
    fail("B2_RANGE", "b2 out of range");
  } else if (!detail::b2_admissible(e0, b1, b2)) {
    fail("B2_CATALOG", "b2 not in admissible set");
  }
  if (p.s() < 3 || !r.ok) return r;

  const i64 b3 = p.b(3);
  if (b1 + b2 >= 2 * e0) {
    if (b3 != b2 + 4 * e0) fail("B3_FORCED", "b3 must equal b2+4e0");
  } else if (b3 < 3 * b2 + 2 * b1 || b3 > 8 * e0 - b2 - 2 * b1) {
    fail("B3_RANGE", "b3 out of range");
  } else if (!detail::b3_admissible(e0, b1, b2, b3)) {
    fail("B3_CATALOG", "b3 not in admissible set");
  }
  return r;
}

// Odd break tuples of length s accepted by validate_profile, lexicographic.
inline std::vector<std::vector<i64>> enumerate_breaks(i64 e0, int s) {
  std::vector<std::vector<i64>> out;
  if (e0 < 1 || s < 1 || s > 3) return out;
  for (i64 b1 = 1; b1 <= 2 * e0 - 1; b1 += 2) {
    if (s == 1) {
      out.push_back({b1});
      continue;
    }
    std::vector<i64> b2s;
    if (b1 >= e0) {
      b2s.push_back(b1 + 2 * e0);
    } else {
      for (i64 b2 = 3 * b1; b2 <= 4 * e0 - b1; b2 += 2)
        if (detail::b2_admissible(e0, b1, b2)) b2s.push_back(b2);
    }
    for (i64 b2 : b2s) {
      if (s == 2) {
        out.push_back({b1, b2});
        continue;
      }
      if (b1 + b2 >= 2 * e0) {
        out.push_back({b1, b2, b2 + 4 * e0});
        continue;
      }
      for (i64 b3 = 3 * b2 + 2 * b1; b3 <= 8 * e0 - b2 - 2 * b1; b3 += 2)
        if (detail::b3_admissible(e0, b1, b2, b3)) out.push_back({b1, b2, b3});
    }
  }
  return out;
}

enum class Case { A, B, C, D, E, F, G, H, EVEN_MAX };

inline constexpr std::array<Case, 8> kOddCases = {Case::A, Case::B, Case::C, Case::D,
                                                   Case::E, Case::F, Case::G, Case::H};

inline std::string_view to_string(Case c) {
  static constexpr std::array<std::string_view, 9> names = {"A", "B", "C", "D", "E",
                                                            "F", "G", "H", "EVEN_MAX"};
  return names[static_cast<std::size_t>(c)];
}

inline int column(Case c) { return static_cast<int>(c); }

struct CaseLabel {
  Case value = Case::A;
  bool stable = false;
};

// b3 is forced to b2+4e0 once b1+b2 >= 2e0; otherwise the profile lies in the
// triangular region where E, F appear as their barred variants.
inline bool b3_forced(const Profile& p) { return p.b(1) + p.b(2) >= 2 * p.e0; }

inline CaseLabel classify_case(const Profile& p) {
  auto rep = validate_profile(p);
  if (!rep.ok) throw Error(ErrorCode::InvalidProfile, rep.violations.front().message);
  if (p.parity() == Parity::Even) return {Case::EVEN_MAX, false};
  if (p.s() != 3) throw Error(ErrorCode::InvalidProfile, "classification needs three breaks");

  const i64 e0 = p.e0, b1 = p.b(1), b2 = p.b(2), b3 = p.b(3);
  auto gt = [](i64 lhs, i64 rhs, const char* what) {
    if (lhs == rhs) throw Error(ErrorCode::BoundaryHit, what);
    return lhs > rhs;
  };
  CaseLabel out;
  out.stable = b1 >= e0;
  if (gt(3 * b2, 12 * e0 - 4 * b1, "3b2 = 12e0-4b1")) out.value = Case::A;
  else if (gt(b2, 4 * e0 - 2 * b1, "b2 = 4e0-2b1")) out.value = Case::B;
  else if (gt(b2, 4 * e0 - 4 * b1, "b2 = 4e0-4b1")) {
    out.value = gt(3 * b2, 4 * e0 + 4 * b1, "3b2 = 4e0+4b1") ? Case::C : Case::D;
  } else if (gt(b3, 8 * e0 + 4 * b1 - 2 * b2, "b3 = 8e0+4b1-2b2")) out.value = Case::E;
  else if (gt(b3, 8 * e0 - 2 * b2, "b3 = 8e0-2b2")) out.value = Case::F;
  else if (gt(b3, 8 * e0 - 4 * b1 - 2 * b2, "b3 = 8e0-4b1-2b2")) out.value = Case::G;
  else out.value = Case::H;
  return out;
}

}  // namespace ambigal
