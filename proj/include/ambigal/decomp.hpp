#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "formula.hpp"
#include "modules.hpp"
#include "ramification.hpp"

namespace ambigal {

using Multiset = std::map<Mod, i64>;

struct Decomposition {
  Multiset mult;  // zero entries are kept so table cells stay visible
  std::optional<Profile> profile;
  i64 i = 0;
  std::optional<Case> label;

  void add(Mod m, i64 k) { mult[m] += k; }
  i64 at(Mod m) const {
    auto it = mult.find(m);
    return it == mult.end() ? 0 : it->second;
  }
  Multiset nonzero() const {
    Multiset out;
    for (auto& [m, k] : mult)
      if (k != 0) out.emplace(m, k);
    return out;
  }
  i64 rank() const {
    i64 r = 0;
    for (auto& [m, k] : mult) r += k * ambigal::rank(m);
    return r;
  }
  std::array<i64, 4> chars() const {
    std::array<i64, 4> c{};
    for (auto& [m, k] : mult)
      for (int j = 0; j < 4; ++j) c[j] += k * info(m).chars[j];
    return c;
  }
  std::optional<Mod> first_negative() const {
    for (auto& [m, k] : mult)
      if (k < 0) return m;
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Constants

struct Constants {
  SymValues v{};
  i64 operator[](Sym s) const { return v[static_cast<std::size_t>(s)]; }
};

inline Constants constants(i64 i, const Profile& p) {
  const i64 b1 = p.b(1), b2 = p.b(2), b3 = p.b(3);
  auto c8 = [](i64 x) { return cdiv(x, 8); };
  Constants k;
  auto set = [&](Sym s, i64 x) { k.v[static_cast<std::size_t>(s)] = x; };
  set(Sym::a, c8(i - 2 * b2));
  set(Sym::abar, c8(i + b3 - 2 * b2));
  set(Sym::b, c8(i - 2 * b2 - 4 * b1));
  set(Sym::bbar, c8(i + b3 - 2 * b2 - 4 * b1));
  set(Sym::c, c8(i - 4 * b2));
  set(Sym::cbar, c8(i + b3 - 4 * b2));
  set(Sym::d, c8(i - 4 * b2 - 4 * b1));
  set(Sym::dbar, c8(i + b3 - 4 * b2 - 4 * b1));
  set(Sym::w, c8(i - 2 * b2 - 2 * b1));
  set(Sym::wbar, c8(i + b3 - 2 * b2 - 2 * b1));
  set(Sym::y, c8(i - 4 * b2 - 2 * b1));
  set(Sym::ybar, c8(i + b3 - 4 * b2 - 2 * b1));
  set(Sym::zbar, c8(i + b3 - 4 * b2 - 6 * b1));
  set(Sym::z2, c8(i + b3 - 4 * b2 + 2 * b1));
  set(Sym::m, (b2 - b1) / 2);
  set(Sym::e0, p.e0);
  set(Sym::b1, b1);
  return k;
}

struct Constants2 {
  i64 a, b_A, b_B, c_A, c_B, d_A, d_B;
};

inline Constants2 constants2(i64 i, i64 b1, i64 b2, i64 e0) {
  auto c4 = [](i64 x) { return cdiv(x, 4); };
  return {c4(i + b2) - c4(i + 2 * b1),
          e0 + c4(i) - c4(i + b2),
          c4(i + b2 + 2 * b1) - c4(i + b2),
          c4(i + b2 + 2 * b1) - e0 - c4(i),
          e0 + c4(i) - c4(i + b2 + 2 * b1),
          e0 + c4(i + 2 * b1) - c4(i + b2 + 2 * b1),
          c4(i + 2 * b1) - c4(i)};
}

// ---------------------------------------------------------------------------
// M1, M2

inline Decomposition m1(i64 i, i64 b1, i64 e0) {
  const i64 q = cdiv(i + b1, 2) - cdiv(i, 2);
  Decomposition d;
  d.i = i;
  d.add(Mod::R0, q);
  d.add(Mod::R1, q);
  d.add(Mod::GR2, e0 - q);
  if (e0 - q < 0) throw Error(ErrorCode::NegativeMultiplicity, "m1: GR2");
  return d;
}

inline bool m2_branch_a(i64 b1, i64 b2, i64 e0) { return b2 + 2 * b1 > 4 * e0; }

inline Decomposition m2(i64 i, i64 b1, i64 b2, i64 e0) {
  auto k = constants2(i, b1, b2, e0);
  Decomposition d;
  d.i = i;
  d.add(Mod::I, k.a);
  if (m2_branch_a(b1, b2, e0)) {
    d.add(Mod::H, k.b_A);
    d.add(Mod::G, k.c_A);
    d.add(Mod::L, k.d_A);
  } else {
    d.add(Mod::H, k.b_B);
    d.add(Mod::M, k.c_B);
    d.add(Mod::L, k.d_B);
  }
  if (auto neg = d.first_negative())
    throw Error(ErrorCode::NegativeMultiplicity, "m2: " + std::string(name(*neg)));
  return d;
}

// ---------------------------------------------------------------------------
// M3 tables, transcribed verbatim. Columns A..H, rows 1..10.

inline constexpr std::array<std::array<std::string_view, 8>, 10> kCellModule = {{
    {"H", "H", "H", "H", "I1", "I1", "I1", "I1"},
    {"", "", "H1L", "H1L", "H1L", "H1L", "", ""},
    {"", "", "", "H1G", "", "H1G", "", ""},
    {"H2", "H2", "H1", "H1", "H1", "H1", "H1", "H1"},
    {"M", "H12", "H12", "H12", "G", "G", "G", "G"},
    {"M1", "M1", "G4", "G4", "G4", "G4", "G4", "G4"},
    {"L", "L", "L", "L", "G3", "G3", "G3", "G3"},
    {"L3", "L3", "L3", "L3", "L3", "L3", "G2", "G2"},
    {"I", "I", "I", "L2", "I", "L2", "L2", "G1"},
    {"I2", "I2", "I2", "I2", "I2", "I2", "L1", "L1"},
}};

inline constexpr std::array<std::array<std::string_view, 8>, 10> kCellFormula = {{
    {"dbar-b", "dbar-b", "abar-b-e0", "abar-b-e0", "b+e0-abar", "b+e0-abar", "b-c", "b-c"},
    {"", "", "w+e0-abar", "ybar+m-abar", "w-b", "ybar+m-e0-b", "", ""},
    {"", "", "", "d-ybar+e0", "", "cbar-ybar", "", ""},
    {"d+e0-dbar", "abar-dbar-e0", "dbar-w", "dbar-d-m", "a-w", "a+e0-cbar-m", "a-b", "a-b"},
    {"abar-d-2e0", "d+2e0-abar", "a-dbar", "a-dbar", "dbar-a", "dbar-a", "dbar-a", "dbar-a"},
    {"a+e0-abar", "a-d-e0", "d+e0-a", "wbar-m-a", "cbar-dbar", "ybar-dbar", "cbar-dbar", "cbar-dbar"},
    {"cbar-a", "cbar-a", "cbar-d-e0", "cbar-d-e0", "d+e0-cbar", "d+e0-cbar", "bbar-cbar", "bbar-cbar"},
    {"c+e0-cbar", "c+e0-cbar", "zbar+b1-cbar", "zbar+b1-cbar", "y-d", "y+e0-d", "d+e0-bbar", "abar-bbar"},
    {"bbar-c-e0", "bbar-c-e0", "bbar-c-e0", "c+e0-bbar", "bbar-c-e0", "c+e0-bbar", "d+e0-bbar", "d+e0-abar"},
    {"b-bbar+e0", "b-bbar+e0", "b-bbar+e0", "b-c", "abar-bbar", "abar-c-e0", "c+e0-abar", "c-d"},
}};

inline constexpr std::array<std::string_view, 8> kR3Printed = {
    "(abar+bbar+cbar+dbar)-(a+b+c+d)-3e0",
    "(abar+bbar+cbar+dbar)-(a+b+c+d)-3e0",
    "(abar+bbar+cbar+dbar)-(a+b+d)-2e0-(zbar+b1)",
    "(abar+bbar+cbar+dbar)-(a+b)-e0+m-(wbar+zbar+b1)",
    "bbar+dbar-a-y-e0",
    "(bbar+dbar+cbar)-(a+y+ybar)-e0",
    "dbar-a",
    "dbar-a",
};

// The C and D formulas with zbar+b1 read as one ceiling, ceil((i+b3-4b2+2b1)/8).
inline constexpr std::array<std::string_view, 8> kR3SingleCeiling = {
    kR3Printed[0], kR3Printed[1],
    "(abar+bbar+cbar+dbar)-(a+b+d)-2e0-z2",
    "(abar+bbar+cbar+dbar)-(a+b)-e0+m-(wbar+z2)",
    kR3Printed[4], kR3Printed[5], kR3Printed[6], kR3Printed[7],
};

inline constexpr int kR3Row = 11;

enum class Reading { Printed, Adopted };

// Cells whose printed entry fails the character sum or the window-count
// oracle, with the reading used instead. Row kR3Row is the R3 paragraph.
struct Override {
  Case column;
  int row;
  Mod mod;
  std::string_view printed;
  std::string_view adopted;
};

inline const std::vector<Override>& overrides() {
  static const std::vector<Override> v = {
      {Case::D, 3, Mod::H1G, "d-ybar+e0", "pairs(D; 2 -> 7 -> 4)"},
      {Case::D, 4, Mod::H1, "dbar-d-m", "dbar-abar+e0-H1L-H1G"},
      {Case::D, 6, Mod::G4, "wbar-m-a", "d+e0-a-H1G"},
      {Case::D, kR3Row, Mod::R3, kR3Printed[3], "H+H1L+H1G+L-H12"},
      {Case::F, 2, Mod::H1L, "ybar+m-e0-b", "pairs(F; 2 -> 6)"},
      {Case::F, 3, Mod::H1G, "cbar-ybar", "pairs(F; 2 -> 7 -> 4)"},
      {Case::F, 4, Mod::H1, "a+e0-cbar-m", "a-b-H1L-H1G"},
      {Case::F, 6, Mod::G4, "ybar-dbar", "cbar-dbar-H1G"},
      {Case::F, 8, Mod::L3, "y+e0-d", "bbar-d-e0-H1L"},
      {Case::F, kR3Row, Mod::R3, kR3Printed[5], "G+H1L+H1G"},
      {Case::G, 9, Mod::L2, "d+e0-bbar", "abar-d-e0"},
  };
  return v;
}

namespace detail {

struct ParsedTables {
  std::array<std::array<std::optional<Linear>, 8>, 10> t2;
  std::array<Linear, 8> r3;
  std::array<Linear, 8> r3_single;
};

inline const ParsedTables& parsed_tables() {
  static const ParsedTables t = [] {
    ParsedTables out;
    for (int r = 0; r < 10; ++r)
      for (int c = 0; c < 8; ++c)
        if (!kCellFormula[r][c].empty()) out.t2[r][c] = parse_formula(kCellFormula[r][c]);
    for (int c = 0; c < 8; ++c) {
      out.r3[c] = parse_formula(kR3Printed[c]);
      out.r3_single[c] = parse_formula(kR3SingleCeiling[c]);
    }
    return out;
  }();
  return t;
}

// Length of [lo1,hi1) ∩ [lo2,hi2) ∩ ...
inline i64 overlap(std::initializer_list<std::pair<i64, i64>> iv) {
  i64 lo = iv.begin()->first, hi = iv.begin()->second;
  for (auto& [l, h] : iv) {
    lo = std::max(lo, l);
    hi = std::min(hi, h);
  }
  return std::max<i64>(0, hi - lo);
}

}  // namespace detail

struct PairCounts {
  i64 h1l = 0, h1g = 0;
};

// Closed forms for the D and F pair counts. Row 2 of the window schedule is
// [A-e, D) in D and [b, a) in F; a partner m+e0-t (or m+e0-b1 when b2 = 3b1)
// is tested against the later rows.
inline PairCounts pair_counts(Case c, const Constants& k, const Profile& p) {
  const i64 e = p.e0, b1 = p.b(1), b2 = p.b(2);
  const i64 a = k[Sym::a], A = k[Sym::abar], b = k[Sym::b], B = k[Sym::bbar];
  const i64 cc = k[Sym::c], C = k[Sym::cbar], d = k[Sym::d], D = k[Sym::dbar];
  using detail::overlap;
  if (c == Case::D) {
    if (b2 == 3 * b1) return {0, overlap({{A - e, D}, {a - e + b1, d + b1}})};
    const i64 t = (b2 - b1) / 4;
    return {overlap({{A - e, D}, {C - e + t, B - e + t}}),
            overlap({{A - e, D}, {B - e + t, cc + t}, {a - e + 2 * t, d + 2 * t}})};
  }
  if (c == Case::F) {
    if (b2 == 3 * b1) return {0, overlap({{b, a}, {D - e + b1, C - e + b1}})};
    const i64 t = (b2 - b1) / 4;
    return {overlap({{b, a}, {d + t, B - e + t}}),
            overlap({{b, a}, {B - e + t, cc + t}, {D - e + 2 * t, C - e + 2 * t}})};
  }
  return {};
}

struct Cell {
  int row;  // 1..10, or kR3Row
  Mod mod;
  i64 value;
  bool adopted;
};

inline std::vector<Cell> m3_cells(i64 i, const Profile& p, Case c, Reading reading = Reading::Adopted) {
  const auto& tabs = detail::parsed_tables();
  const auto k = constants(i, p);
  const int j = column(c);
  std::vector<Cell> cells;
  for (int r = 0; r < 10; ++r) {
    if (!tabs.t2[r][j]) continue;
    cells.push_back({r + 1, *mod_from_name(kCellModule[r][j]), tabs.t2[r][j]->eval(k.v), false});
  }
  cells.push_back({kR3Row, Mod::R3, tabs.r3[j].eval(k.v), false});
  if (reading == Reading::Printed) return cells;

  auto cell = [&](int row) -> Cell& {
    for (auto& x : cells)
      if (x.row == row) return x;
    throw std::logic_error("missing table cell");
  };
  auto set = [&](int row, i64 v) {
    cell(row).value = v;
    cell(row).adopted = true;
  };
  auto val = [&](int row) { return cell(row).value; };
  const i64 e = p.e0;
  if (c == Case::G) set(9, k[Sym::abar] - k[Sym::d] - e);
  if (c == Case::D) {
    auto pc = pair_counts(c, k, p);
    // the printed H1L entry already equals pc.h1l
    set(3, pc.h1g);
    set(4, k[Sym::dbar] - k[Sym::abar] + e - val(2) - pc.h1g);
    set(6, k[Sym::d] - k[Sym::a] + e - pc.h1g);
    set(kR3Row, val(1) + val(2) + pc.h1g + val(7) - val(5));
  }
  if (c == Case::F) {
    auto pc = pair_counts(c, k, p);
    set(2, pc.h1l);
    set(3, pc.h1g);
    set(4, k[Sym::a] - k[Sym::b] - pc.h1l - pc.h1g);
    set(6, k[Sym::cbar] - k[Sym::dbar] - pc.h1g);
    set(8, k[Sym::bbar] - k[Sym::d] - e - pc.h1l);
    set(kR3Row, val(5) + pc.h1l + pc.h1g);
  }
  return cells;
}

inline Decomposition m3_raw(i64 i, const Profile& p, Reading reading = Reading::Adopted) {
  auto label = classify_case(p);
  if (label.value == Case::EVEN_MAX) throw Error(ErrorCode::UnsupportedEven, "m3 needs odd breaks");
  Decomposition d;
  d.profile = p;
  d.i = i;
  d.label = label.value;
  for (auto& x : m3_cells(i, p, label.value, reading)) d.add(x.mod, x.value);
  return d;
}

inline Decomposition m3(i64 i, const Profile& p) {
  auto label = classify_case(p);
  if (label.value == Case::EVEN_MAX) throw Error(ErrorCode::UnsupportedEven, "m3 needs odd breaks");
  Decomposition d;
  d.profile = p;
  d.i = i;
  d.label = label.value;
  for (auto& x : m3_cells(i, p, label.value)) {
    if (x.value < 0)
      throw Error(ErrorCode::NegativeMultiplicity,
                  "case " + std::string(to_string(label.value)) + " row " +
                      (x.row == kR3Row ? std::string("R3") : std::to_string(x.row)) + " (" +
                      std::string(name(x.mod)) + ") = " + std::to_string(x.value));
    d.add(x.mod, x.value);
  }
  return d;
}

// R3 under either reading of the C/D "zbar+b1" term.
inline i64 r3_formula(Case c, const Constants& k, bool single_ceiling) {
  const auto& tabs = detail::parsed_tables();
  const int j = column(c);
  return (single_ceiling ? tabs.r3_single[j] : tabs.r3[j]).eval(k.v);
}

// In case A with b2 = 4e0-b1 the element rho has the larger valuation
// 4b2-2b1. Counting windows with it moves e0-b1 elements from the I row
// into the H row; the table entries are the relabeled counts.
inline i64 case_a_rho_transfer(const Profile& p) {
  if (p.s() != 3 || p.b(2) != 4 * p.e0 - p.b(1)) return 0;
  if (classify_case(p).value != Case::A) return 0;
  return p.e0 - p.b(1);
}

// ---------------------------------------------------------------------------

inline Decomposition normalize(const Decomposition& in) {
  Decomposition out = in;
  out.mult.clear();
  for (auto& [m, k] : in.mult) {
    if (m == Mod::I) {
      out.add(Mod::R2, k);
      out.add(Mod::GR2, k);
    } else if (m == Mod::M) {
      out.add(Mod::R2, k);
      out.add(Mod::R1, k);
      out.add(Mod::R0, k);
    } else {
      out.add(m, k);
    }
  }
  return out;
}

inline Decomposition decompose_even(const Profile& p, i64 i) {
  if (!is_even_config(p)) throw Error(ErrorCode::UnsupportedEven, "not the b1=2e0, b2=4e0 configuration");
  Decomposition d;
  d.profile = p;
  d.i = i;
  d.label = Case::EVEN_MAX;
  d.add(Mod::GR2, p.e0);
  d.add(Mod::R2, p.e0);
  d.add(Mod::R3, p.e0);
  return d;
}

// O_k[G] tensored over Z_2[G_1] with inner^{f_exp}. For the even
// configuration the inner block already describes the full ideal and the
// index is 1.
struct InducedDecomposition {
  Decomposition inner;
  i64 f_exp = 1;
  int n = 0;
  int s = 0;
  i64 index = 1;  // [G : G_1]

  bool trivial() const { return index == 1; }
  i64 total_rank() const { return inner.rank() * index * f_exp; }
};

inline InducedDecomposition assemble_theorem(const Profile& p, i64 i) {
  auto rep = validate_profile(p);
  if (!rep.ok) {
    auto code = rep.unsupported_even() ? ErrorCode::UnsupportedEven : ErrorCode::InvalidProfile;
    throw Error(code, rep.violations.front().message);
  }
  InducedDecomposition out;
  out.f_exp = p.f_exp;
  out.n = p.n;
  out.s = p.s();
  if (p.parity() == Parity::Even) {
    out.inner = decompose_even(p, i);
    return out;
  }
  out.index = i64{1} << (p.n - p.s());
  switch (p.s()) {
    case 0: out.inner.add(Mod::R0, p.e0); break;
    case 1: out.inner = m1(i, p.b(1), p.e0); break;
    case 2: out.inner = m2(i, p.b(1), p.b(2), p.e0); break;
    default: out.inner = m3(i, p); break;
  }
  out.inner.profile = p;
  out.inner.i = i;
  return out;
}

// Block M_s(i, ...) for a valid odd profile with s = n.
inline Decomposition block(const Profile& p, i64 i) {
  switch (p.s()) {
    case 0: {
      Decomposition d;
      d.add(Mod::R0, p.e0);
      return d;
    }
    case 1: return m1(i, p.b(1), p.e0);
    case 2: return m2(i, p.b(1), p.b(2), p.e0);
    default: return m3(i, p);
  }
}

// Indecomposables occurring in some ideal of a totally ramified C_{2^n}
// extension with e0 <= e0_max.
inline std::set<Mod> realizable_set(int n, i64 e0_max) {
  std::set<Mod> out;
  if (n == 0) return {Mod::R0};
  for (i64 e0 = 1; e0 <= e0_max; ++e0)
    for (auto& br : enumerate_breaks(e0, n)) {
      Profile p{n, e0, br, 1};
      for (i64 i = 0; i < 8 * e0; ++i)
        for (auto& [m, k] : normalize(block(p, i)).mult)
          if (k > 0) out.insert(m);
    }
  return out;
}

}  // namespace ambigal
