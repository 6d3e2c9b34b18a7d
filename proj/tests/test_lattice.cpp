#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ambigal/verify.hpp"

using namespace ambigal;

namespace {

std::vector<long> ints(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (auto& x : v) out.push_back(x.get_si());
  return out;
}

int val2(const mpz_class& x) { return x == 0 ? two_adic::kZero : static_cast<int>(mpz_scan1(x.get_mpz_t(), 0)); }

// FNV-1a over all 23 reference vectors, in enumeration order
std::uint64_t reference_digest() {
  std::uint64_t h = 1469598103934665603ull;
  for (auto& v : reference_system().refs)
    for (i64 x : v) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ull;
    }
  return h;
}

}  // namespace

TEST_CASE("presentations") {
  for (Mod m : all_indecomposables()) {
    auto rep = build_lattice(m);
    CAPTURE(name(m));
    CHECK(static_cast<int>(rep.dim()) == rank(m));
    CHECK(sigma8_is_identity(rep));
    CHECK(relations_hold(presentation(m), rep));
  }
  CHECK(build_lattice(Mod::R0).sigma == IntMatrix{{1}});
  CHECK(build_lattice(Mod::R1).sigma == IntMatrix{{-1}});

  // G1 is the group ring: the orbit of the top generator is a Z-basis
  auto g1 = build_lattice(Mod::G1);
  std::size_t top = 0;
  while (g1.basis_labels[top] != "a") ++top;
  IntMatrix orbit(8, std::vector<i64>(8, 0));
  std::vector<i64> v(8, 0);
  v[top] = 1;
  for (int k = 0; k < 8; ++k) {
    for (int r = 0; r < 8; ++r) orbit[r][k] = v[r];
    std::vector<i64> w(8, 0);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) w[r] += g1.sigma[r][c] * v[c];
    v = w;
  }
  CHECK(ints(smith_invariants(orbit)) == std::vector<long>(8, 1));
}

TEST_CASE("direct sums") {
  CHECK(direct_sum(std::vector<LatticeRep>{build_lattice(Mod::R0), build_lattice(Mod::R1)}).sigma ==
        IntMatrix{{1, 0}, {0, -1}});
  Multiset all;
  for (Mod m : all_indecomposables()) all[m] = 1;
  CHECK(direct_sum(all).dim() == 154);
}

TEST_CASE("exact smith") {
  CHECK(ints(smith_invariants(identity(3))) == std::vector<long>{1, 1, 1});
  CHECK(ints(smith_invariants(IntMatrix{{2, 0}, {0, 4}})) == std::vector<long>{2, 4});
  CHECK(ints(smith_invariants(IntMatrix{{6, 4}, {4, 6}})) == std::vector<long>{2, 10});
  // sigma + 1 on GR2 has image of rank 1 and no torsion
  IntMatrix s = build_lattice(Mod::GR2).sigma;
  IntMatrix n = s;
  for (int k = 0; k < 2; ++k) n[k][k] += 1;
  CHECK(ints(smith_invariants(n)) == std::vector<long>{1, 0});
}

TEST_CASE("2-adic smith matches GMP") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 7;
    IntMatrix m(n, std::vector<i64>(n));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<i64>(rng() % 17) - 8;
    if (t % 3 == 0)
      for (std::size_t j = 0; j < n; ++j) m[n - 1][j] = 2 * m[0][j];  // force a kernel
    std::vector<int> want;
    for (auto& d : smith_invariants(m)) want.push_back(val2(d));
    auto got = two_adic::smith(two_adic::from(m), false).vals;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    CHECK(got == want);
  }
}

TEST_CASE("tate") {
  // GR2 over its own C2: trace and sigma-1 both have torsion-free cokernel
  IntMatrix s = build_lattice(Mod::GR2).sigma, nrm = s, dif = s;
  for (int k = 0; k < 2; ++k) nrm[k][k] += 1, dif[k][k] -= 1;
  CHECK(ints(smith_invariants(nrm)) == std::vector<long>{1, 0});
  CHECK(ints(smith_invariants(dif)) == std::vector<long>{1, 0});

  auto r0 = fingerprint(build_lattice(Mod::R0));
  CHECK(r0.tate[0] == std::pair<i64, i64>{1, 0});
  CHECK(r0.tate[2] == std::pair<i64, i64>{1, 0});
  auto r1 = fingerprint(build_lattice(Mod::R1));
  CHECK(r1.tate[2] == std::pair<i64, i64>{0, 1});
  // the free module is cohomologically trivial
  auto g1 = fingerprint(build_lattice(Mod::G1));
  for (auto& t : g1.tate) CHECK(t == std::pair<i64, i64>{0, 0});
}

TEST_CASE("fingerprints") {
  std::set<std::vector<i64>> seen;
  for (Mod m : all_indecomposables()) {
    auto fp = fingerprint(build_lattice(m));
    CHECK(fp.vector().size() == 133);
    for (int j = 0; j < 4; ++j) CHECK(fp.chars[j] == info(m).chars[j]);
    seen.insert(fp.vector());
  }
  CHECK(seen.size() == 23);
  CHECK(reference_system().rank == 23);
  CHECK(reference_digest() == 3120286222064233695ull);
}

TEST_CASE("recovery") {
  Multiset g1{{Mod::G1, 1}};
  CHECK(recover_multiplicities(fingerprint(build_lattice(Mod::G1))) == g1);

  Multiset want{{Mod::R0, 1}, {Mod::R1, 1}, {Mod::R2, 1}, {Mod::R3, 1}};
  Decomposition d;
  d.add(Mod::M, 1);
  d.add(Mod::R3, 1);
  CHECK(recover_multiplicities(fingerprint(direct_sum(normalize(d).nonzero()))) == want);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    auto ms = verify::random_multiset(rng, 96);
    CHECK(recover_multiplicities(fingerprint(verify::scrambled_sum(ms, rng))) == ms);
  }
}
