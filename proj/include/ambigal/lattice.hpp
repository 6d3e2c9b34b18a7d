#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "modules.hpp"

namespace ambigal {

using IntMatrix = std::vector<std::vector<i64>>;

inline IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<i64>(n, 0));
  for (std::size_t k = 0; k < n; ++k) m[k][k] = 1;
  return m;
}

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  IntMatrix r(n, std::vector<i64>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (i64 x = a[i][t])
        for (std::size_t j = 0; j < m; ++j) r[i][j] += x * b[t][j];
  return r;
}

// ---------------------------------------------------------------------------
// Presentations. A generator of type A spans 4 basis vectors with
// (s^4+1)a = rhs; B spans 2 with (s^2+1)b = rhs; C has (s+1)c = rhs; D has
// (s-1)d = rhs.

enum class GenType { A, B, C, D };

inline int gen_size(GenType t) {
  switch (t) {
    case GenType::A: return 4;
    case GenType::B: return 2;
    default: return 1;
  }
}

struct Term {
  i64 coef;
  int gen;
  int power;  // coefficient of s^power applied to gen
};

struct Generator {
  std::string name;
  GenType type;
  std::vector<Term> rhs;
};

using Presentation = std::vector<Generator>;

namespace detail {

struct PresBuilder {
  Presentation p;
  int add(std::string name, GenType t, std::vector<Term> rhs = {}) {
    p.push_back({std::move(name), t, std::move(rhs)});
    return static_cast<int>(p.size()) - 1;
  }
};

inline std::vector<Term> one(int g) { return {{1, g, 0}}; }
inline std::vector<Term> lam(int g) { return {{1, g, 1}, {-1, g, 0}}; }
inline std::vector<Term> operator+(std::vector<Term> x, const std::vector<Term>& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

struct Base4 {
  int b, c, d;
};

// The rank-4 C_4 modules; `kind` picks the relation on b.
inline Base4 base4(PresBuilder& pb, char kind, const std::string& sfx = "") {
  int d = pb.add("d" + sfx, GenType::D);
  std::vector<Term> crhs = (kind == 'L' || kind == 'M') ? std::vector<Term>{} : one(d);
  int c = pb.add("c" + sfx, GenType::C, crhs);
  std::vector<Term> brhs;
  if (kind == 'G') brhs = one(c);
  else if (kind == 'H') brhs = one(d);
  else if (kind == 'L') brhs = one(c) + one(d);
  int b = pb.add("b" + sfx, GenType::B, brhs);
  return {b, c, d};
}

}  // namespace detail

inline Presentation presentation(Mod id) {
  using namespace detail;
  PresBuilder pb;
  auto top = [&](char kind, auto rhs_of) {
    auto x = base4(pb, kind);
    pb.add("a", GenType::A, rhs_of(x));
  };
  switch (id) {
    case Mod::R0: pb.add("d", GenType::D); break;
    case Mod::R1: pb.add("c", GenType::C); break;
    case Mod::R2: pb.add("b", GenType::B); break;
    case Mod::R3: pb.add("a", GenType::A); break;
    case Mod::GR2: {
      int d = pb.add("d", GenType::D);
      pb.add("c", GenType::C, one(d));
      break;
    }
    case Mod::G: base4(pb, 'G'); break;
    case Mod::H: base4(pb, 'H'); break;
    case Mod::L: base4(pb, 'L'); break;
    case Mod::I: base4(pb, 'I'); break;
    case Mod::M: base4(pb, 'M'); break;
    case Mod::G1: top('G', [](Base4 x) { return one(x.b); }); break;
    case Mod::G2: top('G', [](Base4 x) { return lam(x.b); }); break;
    case Mod::G3: top('G', [](Base4 x) { return one(x.c); }); break;
    case Mod::G4: top('G', [](Base4 x) { return one(x.d); }); break;
    case Mod::H1: top('H', [](Base4 x) { return lam(x.b) + one(x.c); }); break;
    case Mod::H2: top('H', [](Base4 x) { return one(x.d); }); break;
    case Mod::I1: top('I', [](Base4 x) { return one(x.b) + one(x.c); }); break;
    case Mod::I2: top('I', [](Base4 x) { return one(x.b) + one(x.d); }); break;
    case Mod::L1: top('L', [](Base4 x) { return one(x.b); }); break;
    case Mod::L2: top('L', [](Base4 x) { return lam(x.b); }); break;
    case Mod::L3: top('L', [](Base4 x) { return one(x.c) + one(x.d); }); break;
    // The diagram attaches R3 through lambda in R2.
    case Mod::M1: top('M', [](Base4 x) { return lam(x.b) + one(x.c) + one(x.d); }); break;
    case Mod::H12: {
      auto x = base4(pb, 'H');
      pb.add("a1", GenType::A, lam(x.b) + one(x.c));
      pb.add("a2", GenType::A, one(x.d));
      break;
    }
    case Mod::H1G:
    case Mod::H1L: {
      auto y = base4(pb, id == Mod::H1G ? 'G' : 'L', "2");
      int d1 = pb.add("d1", GenType::D);
      int c1 = pb.add("c1", GenType::C, one(d1));
      auto brhs = id == Mod::H1G ? one(d1) + one(y.d) : one(d1) + one(y.c) + one(y.d);
      int b1 = pb.add("b1", GenType::B, brhs);
      pb.add("a1", GenType::A, lam(b1) + one(c1));
      break;
    }
  }
  return pb.p;
}

// ---------------------------------------------------------------------------

struct LatticeRep {
  std::vector<std::string> basis_labels;
  IntMatrix sigma;
  std::string source;

  std::size_t dim() const { return sigma.size(); }
};

namespace detail {

inline std::vector<int> gen_offsets(const Presentation& p) {
  std::vector<int> off;
  int n = 0;
  for (auto& g : p) {
    off.push_back(n);
    n += gen_size(g.type);
  }
  off.push_back(n);
  return off;
}

inline std::string power_label(int k, const std::string& g) {
  static const char* pw[] = {"", "σ", "σ²", "σ³"};
  return std::string(pw[k]) + g;
}

}  // namespace detail

inline LatticeRep build_presentation(const Presentation& pres, std::string source) {
  auto off = detail::gen_offsets(pres);
  const std::size_t n = static_cast<std::size_t>(off.back());
  LatticeRep rep{{}, IntMatrix(n, std::vector<i64>(n, 0)), std::move(source)};
  for (std::size_t g = 0; g < pres.size(); ++g) {
    const int len = gen_size(pres[g].type), base = off[g];
    for (int k = 0; k < len; ++k) rep.basis_labels.push_back(detail::power_label(k, pres[g].name));
    for (int k = 0; k + 1 < len; ++k) rep.sigma[base + k + 1][base + k] = 1;
    const int last = base + len - 1;
    rep.sigma[base][last] += pres[g].type == GenType::D ? 1 : -1;
    for (auto& t : pres[g].rhs) rep.sigma[off[t.gen] + t.power][last] += t.coef;
  }
  return rep;
}

inline LatticeRep build_lattice(Mod id) { return build_presentation(presentation(id), std::string(name(id))); }

inline LatticeRep direct_sum(const std::vector<LatticeRep>& reps) {
  std::size_t n = 0;
  for (auto& r : reps) n += r.dim();
  LatticeRep out{{}, IntMatrix(n, std::vector<i64>(n, 0)), "DIRECT_SUM"};
  std::size_t at = 0;
  for (auto& r : reps) {
    for (auto& l : r.basis_labels) out.basis_labels.push_back(r.source + ":" + l);
    for (std::size_t i = 0; i < r.dim(); ++i)
      for (std::size_t j = 0; j < r.dim(); ++j) out.sigma[at + i][at + j] = r.sigma[i][j];
    at += r.dim();
  }
  return out;
}

// Aliases expand to their summands; everything else is a single block.
inline std::vector<LatticeRep> constituents(Mod id) {
  if (id == Mod::I) return {build_lattice(Mod::R2), build_lattice(Mod::GR2)};
  if (id == Mod::M) return {build_lattice(Mod::R2), build_lattice(Mod::R1), build_lattice(Mod::R0)};
  return {build_lattice(id)};
}

inline LatticeRep direct_sum(const std::map<Mod, i64>& mult) {
  std::vector<LatticeRep> parts;
  for (auto& [m, k] : mult)
    for (i64 r = 0; r < k; ++r)
      for (auto& c : constituents(m)) parts.push_back(std::move(c));
  return direct_sum(parts);
}

// Checks each presentation relation column by column.
inline bool relations_hold(const Presentation& pres, const LatticeRep& rep) {
  auto off = detail::gen_offsets(pres);
  const std::size_t n = rep.dim();
  std::vector<IntMatrix> P{identity(n)};
  for (int k = 1; k <= 4; ++k) P.push_back(matmul(P.back(), rep.sigma));
  for (std::size_t g = 0; g < pres.size(); ++g) {
    const int len = gen_size(pres[g].type), base = off[g];
    for (int k = 0; k < len; ++k)
      for (std::size_t r = 0; r < n; ++r)
        if (P[k][r][base] != (r == static_cast<std::size_t>(base + k) ? 1 : 0)) return false;
    const i64 sign = pres[g].type == GenType::D ? -1 : 1;
    std::vector<i64> want(n, 0);
    for (auto& t : pres[g].rhs) want[off[t.gen] + t.power] += t.coef;
    for (std::size_t r = 0; r < n; ++r) {
      i64 lhs = P[len][r][base] + (r == static_cast<std::size_t>(base) ? sign : 0);
      if (lhs != want[r]) return false;
    }
  }
  return true;
}

inline bool sigma8_is_identity(const LatticeRep& rep) {
  IntMatrix s2 = matmul(rep.sigma, rep.sigma), s4 = matmul(s2, s2);
  return matmul(s4, s4) == identity(rep.dim());
}

// ---------------------------------------------------------------------------
// Exact Smith normal form over Z.

inline std::vector<mpz_class> smith_invariants(const std::vector<std::vector<mpz_class>>& in) {
  auto a = in;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  const std::size_t lim = std::min(rows, cols);
  std::vector<mpz_class> out;
  for (std::size_t k = 0; k < lim; ++k) {
    for (;;) {
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
      if (pi == rows) {
        out.resize(lim, 0);
        return out;
      }
      std::swap(a[k], a[pi]);
      for (auto& row : a) std::swap(row[k], row[pj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (a[i][k] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][k].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
        if (a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (a[k][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[k][j].get_mpz_t(), a[k][k].get_mpz_t());
        for (std::size_t i = k; i < rows; ++i) a[i][j] -= q * a[i][k];
        if (a[k][j] != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the rest; otherwise fold an offending row in
      std::size_t bad = rows;
      for (std::size_t i = k + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[k][k].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = k; j < cols; ++j) a[k][j] += a[bad][j];
    }
    out.push_back(abs(a[k][k]));
  }
  return out;
}

inline std::vector<mpz_class> smith_invariants(const IntMatrix& m) {
  std::vector<std::vector<mpz_class>> a;
  for (auto& row : m) {
    a.emplace_back();
    for (i64 x : row) a.back().emplace_back(static_cast<long>(x));
  }
  return smith_invariants(a);
}

// ---------------------------------------------------------------------------
// 2-adic Smith form modulo 2^64. Over Z_2 the entry of least valuation divides
// every other entry, so elimination never needs a gcd step. Sub- and
// quotient lattices are only known modulo a high power of 2, so entries of
// valuation >= kValCeiling count as zero; genuine valuations here are < 8.

namespace two_adic {

using u64 = std::uint64_t;
using Mat = std::vector<std::vector<u64>>;

inline constexpr int kValCeiling = 40;
inline constexpr int kZero = 64;

inline u64 inverse_odd(u64 a) {
  u64 x = a;  // correct to 3 bits
  for (int k = 0; k < 5; ++k) x *= 2 - a * x;
  return x;
}

inline Mat from(const IntMatrix& m) {
  Mat out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (i64 x : m[i]) out[i].push_back(static_cast<u64>(x));
  return out;
}

struct Result {
  std::vector<int> vals;  // valuation of each diagonal entry, kZero for 0
  Mat v, vinv;            // column transform and its inverse, when tracked
};

// Diagonalizes a square matrix; with track set, returns V and V^{-1} such that
// the columns of V at zero diagonal positions span the kernel.
inline Result smith(Mat a, bool track) {
  const std::size_t n = a.size();
  Result r;
  if (track) {
    r.v.assign(n, std::vector<u64>(n, 0));
    r.vinv.assign(n, std::vector<u64>(n, 0));
    for (std::size_t k = 0; k < n; ++k) r.v[k][k] = r.vinv[k][k] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    int best = kZero;
    std::size_t pi = k, pj = k;
    for (std::size_t i = k; i < n && best > 0; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (a[i][j] != 0) {
          int v = std::countr_zero(a[i][j]);
          if (v < best) {
            best = v, pi = i, pj = j;
            if (v == 0) break;
          }
        }
    if (best >= kValCeiling) {
      r.vals.resize(n, kZero);
      return r;
    }
    std::swap(a[k], a[pi]);
    if (pj != k) {
      for (auto& row : a) std::swap(row[k], row[pj]);
      if (track) {
        for (auto& row : r.v) std::swap(row[k], row[pj]);
        std::swap(r.vinv[k], r.vinv[pj]);
      }
    }
    const u64 unit_inv = inverse_odd(a[k][k] >> best);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      u64 f = (a[i][k] >> best) * unit_inv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    if (track) {
      // clear the pivot row with column ops: col_j -= f col_k
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[k][j] == 0) continue;
        u64 f = (a[k][j] >> best) * unit_inv;
        a[k][j] = 0;
        for (auto& row : r.v) row[j] -= f * row[k];
        for (std::size_t c = 0; c < n; ++c) r.vinv[k][c] += f * r.vinv[j][c];
      }
    }
    r.vals.push_back(best);
  }
  return r;
}

inline Mat conj_block(const Result& r, const Mat& s, const std::vector<std::size_t>& idx) {
  const std::size_t n = s.size();
  // (V^{-1} S V) restricted to idx x idx
  Mat sv(n, std::vector<u64>(idx.size(), 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t)
      if (u64 x = s[i][t])
        for (std::size_t j = 0; j < idx.size(); ++j) sv[i][j] += x * r.v[t][idx[j]];
  Mat out(idx.size(), std::vector<u64>(idx.size(), 0));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t t = 0; t < n; ++t)
      if (u64 x = r.vinv[idx[i]][t])
        for (std::size_t j = 0; j < idx.size(); ++j) out[i][j] += x * sv[t][j];
  return out;
}

}  // namespace two_adic

// ---------------------------------------------------------------------------
// Polynomials in s as products of cyclotomic factors Phi_1^e1 Phi_2^e2 Phi_4^e3 Phi_8^e4.

using Poly = std::array<int, 4>;

inline std::vector<i64> poly_coeffs(const Poly& e) {
  static const std::array<std::vector<i64>, 4> phi = {
      std::vector<i64>{-1, 1}, std::vector<i64>{1, 1}, std::vector<i64>{1, 0, 1}, std::vector<i64>{1, 0, 0, 0, 1}};
  std::vector<i64> p{1};
  for (int f = 0; f < 4; ++f)
    for (int r = 0; r < e[f]; ++r) {
      std::vector<i64> q(p.size() + phi[f].size() - 1, 0);
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < phi[f].size(); ++j) q[i + j] += p[i] * phi[f][j];
      p = q;
    }
  return p;
}

inline std::string poly_name(const Poly& e) {
  static const char* n[] = {"P1", "P2", "P4", "P8"};
  std::string out;
  for (int f = 0; f < 4; ++f)
    for (int r = 0; r < e[f]; ++r) out += n[f];
  return out;
}

namespace detail {

struct PowerCache {
  std::vector<two_adic::Mat> p;  // s^0 .. s^7 mod 2^64
  explicit PowerCache(const two_adic::Mat& s) {
    const std::size_t n = s.size();
    two_adic::Mat id(n, std::vector<two_adic::u64>(n, 0));
    for (std::size_t k = 0; k < n; ++k) id[k][k] = 1;
    p.push_back(id);
    for (int k = 1; k < 8; ++k) {
      two_adic::Mat nx(n, std::vector<two_adic::u64>(n, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t)
          if (auto x = p.back()[i][t])
            for (std::size_t j = 0; j < n; ++j) nx[i][j] += x * s[t][j];
      p.push_back(std::move(nx));
    }
  }
  two_adic::Mat eval(const Poly& e) const {
    auto c = poly_coeffs(e);
    const std::size_t n = p[0].size();
    two_adic::Mat out(n, std::vector<two_adic::u64>(n, 0));
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k])
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) out[i][j] += static_cast<two_adic::u64>(c[k]) * p[k][i][j];
    return out;
  }
};

}  // namespace detail

// Cokernel of f(s) over Z_2: kernel rank and counts of Z/2^v, v = 1..6, and v >= 7.
struct CokerData {
  i64 kernel_rank = 0;
  std::array<i64, 7> torsion{};

  i64 torsion_total() const {
    i64 s = 0;
    for (i64 x : torsion) s += x;
    return s;
  }
};

inline CokerData coker_from_vals(const std::vector<int>& vals) {
  CokerData d;
  for (int v : vals) {
    if (v == two_adic::kZero) ++d.kernel_rank;
    else if (v > 0) ++d.torsion[std::min(v, 7) - 1];
  }
  return d;
}

// ---------------------------------------------------------------------------
// Fingerprint

enum class Part { Whole, ImgP1, ImgP8, KerP1P2P4, KerP4P8 };

struct Feature {
  Part part;
  Poly poly;
};

// The invariant set: selected greedily until the 23 reference vectors had
// full rank, then frozen.
inline const std::vector<Feature>& extended_features() {
  static const std::vector<Feature> f = {
      {Part::Whole, {0, 1, 0, 0}},    {Part::Whole, {0, 0, 1, 0}},  {Part::Whole, {0, 1, 0, 1}},
      {Part::Whole, {0, 1, 1, 0}},    {Part::Whole, {0, 2, 0, 0}},  {Part::ImgP1, {1, 0, 0, 1}},
      {Part::ImgP1, {0, 0, 1, 1}},    {Part::ImgP8, {0, 1, 1, 0}},  {Part::KerP1P2P4, {0, 1, 1, 0}},
      {Part::KerP4P8, {0, 1, 0, 0}},
  };
  return f;
}

inline std::string part_name(Part p) {
  switch (p) {
    case Part::Whole: return "M";
    case Part::ImgP1: return "M/ker(P1)";
    case Part::ImgP8: return "M/ker(P8)";
    case Part::KerP1P2P4: return "ker(P1P2P4)";
    case Part::KerP4P8: return "ker(P4P8)";
  }
  return "?";
}

struct Fingerprint {
  i64 rank = 0;
  std::array<i64, 4> chars{};
  // (H^0, H^1) for the subgroups of order 2, 4, 8; each counted as the number
  // of cyclic factors of the cohomology group
  std::array<std::pair<i64, i64>, 3> tate{};
  // Tate groups split by exponent: for each subgroup, the 7 torsion counts of
  // the two cokernels
  std::vector<i64> tate_detail;
  std::vector<i64> extended;  // per extended feature: part rank, then 7 torsion counts

  std::vector<i64> vector() const {
    std::vector<i64> v{rank};
    v.insert(v.end(), chars.begin(), chars.end());
    for (auto& [h0, h1] : tate) v.push_back(h0), v.push_back(h1);
    v.insert(v.end(), tate_detail.begin(), tate_detail.end());
    v.insert(v.end(), extended.begin(), extended.end());
    return v;
  }
  bool operator==(const Fingerprint& o) const { return vector() == o.vector(); }
};

namespace detail {

struct PartLattice {
  two_adic::Mat sigma;
};

inline std::pair<two_adic::Mat, two_adic::Mat> split_by(const two_adic::Mat& s, const PowerCache& pc,
                                                         const Poly& e) {
  auto r = two_adic::smith(pc.eval(e), true);
  std::vector<std::size_t> zero, nonzero;
  for (std::size_t k = 0; k < r.vals.size(); ++k) (r.vals[k] == two_adic::kZero ? zero : nonzero).push_back(k);
  // the kernel is s-stable, so V^{-1} S V has a vanishing (nonzero, zero) block
  auto cross = [&] {
    const std::size_t n = s.size();
    for (std::size_t i : nonzero)
      for (std::size_t j : zero) {
        two_adic::u64 acc = 0;
        for (std::size_t t = 0; t < n; ++t) {
          two_adic::u64 sv = 0;
          for (std::size_t u = 0; u < n; ++u) sv += s[t][u] * r.v[u][j];
          acc += r.vinv[i][t] * sv;
        }
        if ((acc & 0xffffffffu) != 0) return false;
      }
    return true;
  };
  if (s.size() <= 24 && !cross()) throw std::logic_error("kernel not sigma-stable");
  return {two_adic::conj_block(r, s, zero), two_adic::conj_block(r, s, nonzero)};
}

inline void push_coker(std::vector<i64>& out, const two_adic::Mat& s, const PowerCache* pc, const Poly& e) {
  out.push_back(static_cast<i64>(s.size()));
  if (s.empty()) {
    out.insert(out.end(), 7, 0);
    return;
  }
  auto d = coker_from_vals(two_adic::smith(pc->eval(e), false).vals);
  out.insert(out.end(), d.torsion.begin(), d.torsion.end());
}

}  // namespace detail

inline Fingerprint fingerprint(const LatticeRep& rep) {
  Fingerprint fp;
  fp.rank = static_cast<i64>(rep.dim());
  const auto s = two_adic::from(rep.sigma);
  const detail::PowerCache pc(s);
  auto coker = [&](const Poly& e) { return coker_from_vals(two_adic::smith(pc.eval(e), false).vals); };

  static constexpr std::array<Poly, 4> phi = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  static constexpr std::array<i64, 4> deg = {1, 1, 2, 4};
  for (int j = 0; j < 4; ++j) fp.chars[j] = coker(phi[j]).kernel_rank / deg[j];

  // subgroup of order 2^j: norm and tau-1 as cyclotomic products
  static constexpr std::array<std::pair<Poly, Poly>, 3> tate_polys = {{
      {{0, 0, 0, 1}, {1, 1, 1, 0}},
      {{0, 0, 1, 1}, {1, 1, 0, 0}},
      {{0, 1, 1, 1}, {1, 0, 0, 0}},
  }};
  for (int j = 0; j < 3; ++j) {
    auto h0 = coker(tate_polys[j].first), h1 = coker(tate_polys[j].second);
    fp.tate[j] = {h0.torsion_total(), h1.torsion_total()};
    fp.tate_detail.insert(fp.tate_detail.end(), h0.torsion.begin(), h0.torsion.end());
    fp.tate_detail.insert(fp.tate_detail.end(), h1.torsion.begin(), h1.torsion.end());
  }

  std::map<Part, two_adic::Mat> parts;
  parts[Part::Whole] = s;
  if (!s.empty()) {
    auto [k1, i1] = detail::split_by(s, pc, {1, 0, 0, 0});
    auto [k8, i8] = detail::split_by(s, pc, {0, 0, 0, 1});
    auto [k124, i124] = detail::split_by(s, pc, {1, 1, 1, 0});
    auto [k48, i48] = detail::split_by(s, pc, {0, 0, 1, 1});
    parts[Part::ImgP1] = i1;
    parts[Part::ImgP8] = i8;
    parts[Part::KerP1P2P4] = k124;
    parts[Part::KerP4P8] = k48;
  }
  std::map<Part, detail::PowerCache> caches;
  for (auto& f : extended_features()) {
    const auto& m = parts[f.part];
    if (f.part == Part::Whole) {
      detail::push_coker(fp.extended, m, &pc, f.poly);
      continue;
    }
    auto it = caches.find(f.part);
    if (it == caches.end()) it = caches.emplace(f.part, detail::PowerCache(m)).first;
    detail::push_coker(fp.extended, m, &it->second, f.poly);
  }
  return fp;
}

// ---------------------------------------------------------------------------
// Recovery

struct Recovery {
  std::map<Mod, i64> mult;
};

struct ReferenceSystem {
  std::vector<std::vector<i64>> refs;  // one fingerprint vector per indecomposable
  std::vector<std::size_t> pivots;     // feature indices giving an invertible 23x23 system
  std::size_t rank = 0;
};

inline const ReferenceSystem& reference_system() {
  static const ReferenceSystem sys = [] {
    ReferenceSystem r;
    for (Mod m : all_indecomposables()) r.refs.push_back(fingerprint(build_lattice(m)).vector());
    const std::size_t nf = r.refs[0].size(), nm = r.refs.size();
    // row-reduce the feature-by-module matrix to find independent features
    std::vector<std::vector<mpq_class>> a(nf, std::vector<mpq_class>(nm));
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t k = 0; k < nm; ++k) a[f][k] = static_cast<long>(r.refs[k][f]);
    std::vector<std::size_t> order(nf);
    for (std::size_t f = 0; f < nf; ++f) order[f] = f;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nm && row < nf; ++col) {
      std::size_t p = row;
      while (p < nf && a[p][col] == 0) ++p;
      if (p == nf) continue;
      std::swap(a[p], a[row]);
      std::swap(order[p], order[row]);
      for (std::size_t i = row + 1; i < nf; ++i) {
        if (a[i][col] == 0) continue;
        mpq_class q = a[i][col] / a[row][col];
        for (std::size_t j = col; j < nm; ++j) a[i][j] -= q * a[row][j];
      }
      r.pivots.push_back(order[row]);
      ++row;
    }
    r.rank = row;
    return r;
  }();
  return sys;
}

inline std::map<Mod, i64> recover_multiplicities(const Fingerprint& fp) {
  const auto& sys = reference_system();
  const std::size_t nm = sys.refs.size();
  if (sys.rank < nm) throw Error(ErrorCode::Ambiguous, "reference fingerprints are linearly dependent");
  const auto target = fp.vector();
  // solve sum_k x_k refs[k][pivot] = target[pivot]
  std::vector<std::vector<mpq_class>> a(nm, std::vector<mpq_class>(nm + 1));
  for (std::size_t r = 0; r < nm; ++r) {
    for (std::size_t k = 0; k < nm; ++k) a[r][k] = static_cast<long>(sys.refs[k][sys.pivots[r]]);
    a[r][nm] = static_cast<long>(target[sys.pivots[r]]);
  }
  for (std::size_t c = 0; c < nm; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < nm; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class q = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= nm; ++j) a[r][j] -= q * a[c][j];
    }
  }
  std::map<Mod, i64> out;
  std::vector<i64> x(nm);
  for (std::size_t k = 0; k < nm; ++k) {
    mpq_class v = a[k][nm] / a[k][k];
    if (v.get_den() != 1 || v < 0) throw Error(ErrorCode::Infeasible, "no nonnegative integer solution");
    x[k] = v.get_num().get_si();
    if (x[k] > 0) out[all_indecomposables()[k]] = x[k];
  }
  for (std::size_t f = 0; f < target.size(); ++f) {
    i64 s = 0;
    for (std::size_t k = 0; k < nm; ++k) s += x[k] * sys.refs[k][f];
    if (s != target[f]) throw Error(ErrorCode::Infeasible, "fingerprint outside the span of the references");
  }
  return out;
}

}  // namespace ambigal
