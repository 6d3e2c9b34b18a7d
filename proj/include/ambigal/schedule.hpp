#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "modules.hpp"
#include "ramification.hpp"

namespace ambigal {

// alpha, (s^2+1)alpha, (s+1)(s^2+1)alpha, rho
enum class Family { ALPHA, SIGMA2_ALPHA, SIGMA_SIGMA2_ALPHA, RHO };

// rho has v_2 = b2+2b1 in general. When b2 = 4e0-b1 the direct construction
// gives 2b2-b1 instead; Relabeled keeps the generic value.
enum class RhoValuation { Relabeled, Unrelabeled };

struct ElementFamily {
  Family family = Family::ALPHA;
  bool barred = false;
  int k = 0;  // scaled by 2^k

  std::string str() const {
    static constexpr std::array<std::string_view, 4> n = {"a", "s", "t", "r"};
    std::string out = k == -1 ? "h" : k == 0 ? "" : std::to_string(1 << k);
    out += n[static_cast<std::size_t>(family)];
    if (barred) out += "~";
    return out;
  }
};

// Token syntax: optional h (1/2), 2 or 4; letter a,s,t,r; trailing ~ for a bar.
inline ElementFamily parse_family(std::string_view tok) {
  ElementFamily f;
  if (tok.empty()) throw std::invalid_argument("empty family token");
  if (tok[0] == 'h') f.k = -1, tok.remove_prefix(1);
  else if (tok[0] == '2') f.k = 1, tok.remove_prefix(1);
  else if (tok[0] == '4') f.k = 2, tok.remove_prefix(1);
  if (!tok.empty() && tok.back() == '~') f.barred = true, tok.remove_suffix(1);
  if (tok == "a") f.family = Family::ALPHA;
  else if (tok == "s") f.family = Family::SIGMA2_ALPHA;
  else if (tok == "t") f.family = Family::SIGMA_SIGMA2_ALPHA;
  else if (tok == "r") f.family = Family::RHO;
  else throw std::invalid_argument("bad family token");
  return f;
}

inline i64 base_offset(const ElementFamily& f, const Profile& p, RhoValuation rho = RhoValuation::Relabeled) {
  const i64 b1 = p.b(1), b2 = p.b(2);
  i64 o = 0;
  switch (f.family) {
    case Family::ALPHA: o = 2 * b2; break;
    case Family::SIGMA2_ALPHA: o = 4 * b2; break;
    case Family::SIGMA_SIGMA2_ALPHA: o = 4 * b2 + 4 * b1; break;
    case Family::RHO:
      o = (rho == RhoValuation::Unrelabeled && b2 == 4 * p.e0 - b1) ? 4 * b2 - 2 * b1 : 2 * b2 + 4 * b1;
      break;
  }
  if (f.barred) o -= p.b(3);
  return o + 8 * p.e0 * f.k;
}

inline i64 family_valuation(const ElementFamily& f, i64 m, const Profile& p,
                            RhoValuation rho = RhoValuation::Relabeled) {
  return base_offset(f, p, rho) + 8 * m;
}

inline bool residue_cover(const Profile& p) {
  unsigned seen = 0;
  for (int fam = 0; fam < 4; ++fam)
    for (bool bar : {false, true})
      seen |= 1u << pmod(base_offset({static_cast<Family>(fam), bar, 0}, p), 8);
  return seen == 0xffu;
}

// ---------------------------------------------------------------------------
// Orderings

struct OrderingSpec {
  std::string_view tokens;
  std::array<std::string_view, 8> labels;  // inequality behind arrow k (entry k to k+1; the last wraps)
};

namespace ineq {
inline constexpr std::string_view kBounds = "b1<2e0, b2<4e0, b3<8e0";
inline constexpr std::string_view kC = "3b2>4e0+4b1";
inline constexpr std::string_view kCn = "3b2<4e0+4b1";
inline constexpr std::string_view kTwoB2 = "2b2<b3";
inline constexpr std::string_view kB = "4e0-2b1<b2";
inline constexpr std::string_view kBn = "4e0-2b1>b2";
inline constexpr std::string_view kA3 = "4e0-4b1/3<b2";
inline constexpr std::string_view kA3n = "4e0-4b1/3>b2";
inline constexpr std::string_view kD = "4e0-4b1<b2";
inline constexpr std::string_view kDn = "4e0-4b1>b2";
inline constexpr std::string_view kPos = "b1>0";
inline constexpr std::string_view kB2 = "b2>2b1";
inline constexpr std::string_view kB2e = "b2>4e0/3";
inline constexpr std::string_view kB3hi = "b3<8e0-4b1";
inline constexpr std::string_view kF = "8e0-2b2<b3";
inline constexpr std::string_view kFn = "8e0-2b2>b3";
inline constexpr std::string_view kE = "8e0+4b1-2b2<b3";
inline constexpr std::string_view kEn = "8e0+4b1-2b2>b3";
inline constexpr std::string_view kB3lo = "b3>2b1+4b2";
inline constexpr std::string_view kG = "8e0-4b1-2b2<b3";
inline constexpr std::string_view kGn = "8e0-4b1-2b2>b3";
}  // namespace ineq

// Labels for E and F depend on whether b3 is forced.
inline OrderingSpec ordering_spec(Case c, bool forced_b3 = true) {
  using namespace ineq;
  switch (c) {
    case Case::A: return {"r 2r~ s 2s~ 2a 4a~ t 2t~", {kBounds, kC, kBounds, kBounds, kBounds, kA3, kBounds, kTwoB2}};
    case Case::B: return {"r 2r~ s 2s~ 2a t 4a~ 2t~", {kBounds, kC, kBounds, kTwoB2, kB, kA3n, kB, kTwoB2}};
    case Case::C: return {"r 2r~ s 2s~ t 2a 2t~ 4a~", {kBounds, kC, kBounds, kD, kBn, kD, kBn, kD}};
    case Case::D: return {"r s 2r~ 2s~ t 2a 2t~ 4a~", {kB2, kCn, kB2, kD, kBn, kD, kBn, kD}};
    case Case::E:
      if (forced_b3) return {"r 2a~ 2r~ s t 2s~ 2t~ 2a", {kDn, kPos, kC, kPos, kDn, kPos, kDn, kPos}};
      return {"r 2a~ 2r~ s t 2s~ 2t~ 2a", {kB3hi, kPos, kE, kPos, kB3hi, kPos, kB3lo, kPos}};
    case Case::F:
      if (forced_b3) return {"r 2a~ s 2r~ t 2s~ 2t~ 2a", {kDn, kB2e, kCn, kB2e, kDn, kPos, kDn, kPos}};
      return {"r 2a~ s 2r~ t 2s~ 2t~ 2a", {kB3hi, kF, kEn, kF, kB3hi, kPos, kB3lo, kPos}};
    case Case::G: return {"r s 2a~ t 2r~ 2s~ 2t~ 2a", {kB2, kFn, kG, kFn, kB2, kPos, kB3lo, kPos}};
    case Case::H: return {"r s t 2a~ 2r~ 2s~ 2t~ 2a", {kB2, kPos, kGn, kPos, kB2, kPos, kB3lo, kPos}};
    default: throw Error(ErrorCode::UnsupportedEven, "no ordering for the even configuration");
  }
}

inline std::vector<ElementFamily> tokens_of(std::string_view s) {
  std::vector<ElementFamily> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(' ', pos);
    if (next == std::string_view::npos) next = s.size();
    if (next > pos) out.push_back(parse_family(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

struct Ordering {
  std::vector<ElementFamily> families;
  std::array<std::string_view, 8> labels;
  std::vector<i64> valuations;  // at m = 0, plus the wrap value 8e0 + first
};

inline Ordering case_ordering(Case c, const Profile& p, RhoValuation rho = RhoValuation::Relabeled) {
  auto spec = ordering_spec(c, b3_forced(p));
  Ordering o{tokens_of(spec.tokens), spec.labels, {}};
  for (auto& f : o.families) o.valuations.push_back(base_offset(f, p, rho));
  o.valuations.push_back(o.valuations.front() + 8 * p.e0);
  for (std::size_t k = 0; k < 8; ++k) {
    if (o.valuations[k] < o.valuations[k + 1]) continue;
    auto to = k + 1 < 8 ? o.families[k + 1].str() : "2" + o.families[0].str();
    throw Error(ErrorCode::OrderViolation,
                "case " + std::string(to_string(c)) + ": " + o.families[k].str() + " -> " + to +
                    " (inequality " + std::string(spec.labels[k]) + "), " +
                    std::to_string(o.valuations[k]) + " >= " + std::to_string(o.valuations[k + 1]));
  }
  return o;
}

// ---------------------------------------------------------------------------
// Basis rows. Row r of case c lists eight families; the elements of the row
// sit at subscripts m with v(first, m) >= i and v(last, m) <= i + 8e0 - 1.

inline constexpr std::array<std::array<std::string_view, 8>, 8> kRows = {{
    {"r 2r~ s 2s~ 2a 4a~ t 2t~", "t~ r 2r~ s 2s~ 2a 4a~ t", "ht t~ r 2r~ s 2s~ 2a 4a~",
     "2a~ ht t~ r 2r~ s 2s~ 2a", "a 2a~ ht t~ r 2r~ s 2s~", "s~ a 2a~ ht t~ r 2r~ s",
     "hs s~ a 2a~ ht t~ r 2r~", "r~ hs s~ a 2a~ ht t~ r"},
    {"r 2r~ s 2s~ 2a t 4a~ 2t~", "t~ r 2r~ s 2s~ 2a t 4a~", "2a~ t~ r 2r~ s 2s~ 2a t",
     "ht 2a~ t~ r 2r~ s 2s~ 2a", "a ht 2a~ t~ r 2r~ s 2s~", "s~ a ht 2a~ t~ r 2r~ s",
     "hs s~ a ht 2a~ t~ r 2r~", "r~ hs s~ a ht 2a~ t~ r"},
    {"r 2r~ s 2s~ t 2a 2t~ 4a~", "2a~ r 2r~ s 2s~ t 2a 2t~", "t~ 2a~ r 2r~ s 2s~ t 2a",
     "a t~ 2a~ r 2r~ s 2s~ t", "ht a t~ 2a~ r 2r~ s 2s~", "s~ ht a t~ 2a~ r 2r~ s",
     "hs s~ ht a t~ 2a~ r 2r~", "r~ hs s~ ht a t~ 2a~ r"},
    {"r s 2r~ 2s~ t 2a 2t~ 4a~", "2a~ r s 2r~ 2s~ t 2a 2t~", "t~ 2a~ r s 2r~ 2s~ t 2a",
     "a t~ 2a~ r s 2r~ 2s~ t", "ht a t~ 2a~ r s 2r~ 2s~", "s~ ht a t~ 2a~ r s 2r~",
     "r~ s~ ht a t~ 2a~ r s", "hs r~ s~ ht a t~ 2a~ r"},
    {"2a~ 2r~ s t 2s~ 2t~ 2a 2r", "r 2a~ 2r~ s t 2s~ 2t~ 2a", "a r 2a~ 2r~ s t 2s~ 2t~",
     "t~ a r 2a~ 2r~ s t 2s~", "s~ t~ a r 2a~ 2r~ s t", "ht s~ t~ a r 2a~ 2r~ s",
     "hs ht s~ t~ a r 2a~ 2r~", "r~ hs ht s~ t~ a r 2a~"},
    {"2a~ s 2r~ t 2s~ 2t~ 2a 2r", "r 2a~ s 2r~ t 2s~ 2t~ 2a", "a r 2a~ s 2r~ t 2s~ 2t~",
     "t~ a r 2a~ s 2r~ t 2s~", "s~ t~ a r 2a~ s 2r~ t", "ht s~ t~ a r 2a~ s 2r~",
     "r~ ht s~ t~ a r 2a~ s", "hs r~ ht s~ t~ a r 2a~"},
    {"s 2a~ t 2r~ 2s~ 2t~ 2a 2r", "r s 2a~ t 2r~ 2s~ 2t~ 2a", "a r s 2a~ t 2r~ 2s~ 2t~",
     "t~ a r s 2a~ t 2r~ 2s~", "s~ t~ a r s 2a~ t 2r~", "r~ s~ t~ a r s 2a~ t",
     "ht r~ s~ t~ a r s 2a~", "a~ ht r~ s~ t~ a r s"},
    {"s t 2a~ 2r~ 2s~ 2t~ 2a 2r", "r s t 2a~ 2r~ 2s~ 2t~ 2a", "a r s t 2a~ 2r~ 2s~ 2t~",
     "t~ a r s t 2a~ 2r~ 2s~", "s~ t~ a r s t 2a~ 2r~", "r~ s~ t~ a r s t 2a~",
     "a~ r~ s~ t~ a r s t", "ht a~ r~ s~ t~ a r s"},
}};

// Module carried by each row: the module column with the hybrid rows dropped.
inline constexpr std::array<std::array<Mod, 8>, 8> kRowModule = {{
    {Mod::H, Mod::H2, Mod::M, Mod::M1, Mod::L, Mod::L3, Mod::I, Mod::I2},
    {Mod::H, Mod::H2, Mod::H12, Mod::M1, Mod::L, Mod::L3, Mod::I, Mod::I2},
    {Mod::H, Mod::H1, Mod::H12, Mod::G4, Mod::L, Mod::L3, Mod::I, Mod::I2},
    {Mod::H, Mod::H1, Mod::H12, Mod::G4, Mod::L, Mod::L3, Mod::L2, Mod::I2},
    {Mod::I1, Mod::H1, Mod::G, Mod::G4, Mod::G3, Mod::L3, Mod::I, Mod::I2},
    {Mod::I1, Mod::H1, Mod::G, Mod::G4, Mod::G3, Mod::L3, Mod::L2, Mod::I2},
    {Mod::I1, Mod::H1, Mod::G, Mod::G4, Mod::G3, Mod::G2, Mod::L2, Mod::L1},
    {Mod::I1, Mod::H1, Mod::G, Mod::G4, Mod::G3, Mod::G2, Mod::G1, Mod::L1},
}};

inline Mod row_module(Case c, int r) { return kRowModule.at(column(c)).at(r - 1); }

struct Window {
  i64 lo = 0, hi = -1;  // inclusive; empty when lo > hi
  i64 count() const { return hi >= lo ? hi - lo + 1 : 0; }
  bool contains(i64 m) const { return lo <= m && m <= hi; }
};

inline std::pair<ElementFamily, ElementFamily> row_ends(Case c, int r) {
  auto toks = tokens_of(kRows.at(column(c)).at(r - 1));
  return {toks.front(), toks.back()};
}

inline Window row_window(Case c, int r, i64 i, const Profile& p, RhoValuation rho = RhoValuation::Relabeled) {
  auto [first, last] = row_ends(c, r);
  return {cdiv(i - base_offset(first, p, rho), 8), fdiv(i + 8 * p.e0 - 1 - base_offset(last, p, rho), 8)};
}

inline i64 row_count(Case c, int r, i64 i, const Profile& p, RhoValuation rho = RhoValuation::Relabeled) {
  return row_window(c, r, i, p, rho).count();
}

inline i64 brute_force_row_count(Case c, int r, i64 i, const Profile& p,
                                 RhoValuation rho = RhoValuation::Relabeled) {
  auto toks = tokens_of(kRows.at(column(c)).at(r - 1));
  i64 lo_off = base_offset(toks[0], p, rho), hi_off = lo_off;
  for (auto& f : toks) {
    lo_off = std::min(lo_off, base_offset(f, p, rho));
    hi_off = std::max(hi_off, base_offset(f, p, rho));
  }
  i64 n = 0;
  for (i64 m = fdiv(i - hi_off, 8) - 2; m <= cdiv(i + 8 * p.e0 - lo_off, 8) + 2; ++m) {
    bool in = true;
    for (auto& f : toks) {
      i64 v = family_valuation(f, m, p, rho);
      if (v < i || v > i + 8 * p.e0 - 1) in = false;
    }
    if (in) ++n;
  }
  return n;
}

inline int row_of(Case c, i64 m, i64 i, const Profile& p) {
  for (int r = 1; r <= 8; ++r)
    if (row_window(c, r, i, p).contains(m)) return r;
  return 0;
}

struct PairTally {
  i64 h1l = 0, h1g = 0, trivial = 0;
};

// Walk row 2 and follow each element's partner through the later rows.
// Generic b2: m -> m+e0-t lands in row 6 (H1L); or in row 7 with
// m+e0-2t in row 4 (H1G). b2 = 3b1: m -> m+e0-b1 in row 4 (H1G).
// H1G only exists in cases D and F.
inline PairTally pair_oracle(Case c, i64 i, const Profile& p) {
  PairTally out;
  const i64 e0 = p.e0, b1 = p.b(1), b2 = p.b(2);
  const bool hybrid_g = c == Case::D || c == Case::F;
  auto w = row_window(c, 2, i, p);
  for (i64 m = w.lo; m <= w.hi; ++m) {
    if (b2 == 3 * b1) {
      if (hybrid_g && row_of(c, m + e0 - b1, i, p) == 4) ++out.h1g;
      else ++out.trivial;
      continue;
    }
    const i64 t = (b2 - b1) / 4;
    int r = row_of(c, m + e0 - t, i, p);
    if (r == 6) ++out.h1l;
    else if (hybrid_g && r == 7 && row_of(c, m + e0 - 2 * t, i, p) == 4) ++out.h1g;
    else ++out.trivial;
  }
  return out;
}

}  // namespace ambigal
