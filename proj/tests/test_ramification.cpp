#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ambigal/ramification.hpp"

using namespace ambigal;

TEST_CASE("ceiling division on negatives") {
  CHECK(cdiv(i64{-6}, 8) == 0);
  CHECK(cdiv(i64{-8}, 8) == -1);
  CHECK(cdiv(i64{-9}, 8) == -1);
  CHECK(cdiv(i64{1}, 8) == 1);
  CHECK(fdiv(i64{-1}, 8) == -1);
  CHECK(pmod(i64{-15}, 8) == 1);
}

TEST_CASE("validate") {
  CHECK(validate_profile(Profile::triple(1, 1, 3, 7)).ok);

  auto mixed = validate_profile(Profile::triple(4, 1, 3, 12));
  CHECK_FALSE(mixed.ok);

  auto r = validate_profile(Profile::triple(4, 1, 3, 17));
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations.front().message == "b3 not in admissible set");

  for (i64 b3 : {11, 15, 23, 27}) CHECK(validate_profile(Profile::triple(4, 1, 3, b3)).ok);

  Profile even{3, 2, {4, 8}, 1};
  CHECK(is_even_config(even));
  CHECK(validate_profile(even).ok);
  CHECK(validate_profile(Profile{3, 2, {2, 6}, 1}).unsupported_even());
}

TEST_CASE("enumerate") {
  CHECK(enumerate_breaks(1, 3) == std::vector<std::vector<i64>>{{1, 3, 7}});
  CHECK(enumerate_breaks(2, 1) == std::vector<std::vector<i64>>{{1}, {3}});

  std::vector<i64> b3s;
  for (auto& t : enumerate_breaks(4, 3))
    if (t[0] == 1 && t[1] == 3) b3s.push_back(t[2]);
  CHECK(b3s == std::vector<i64>{11, 15, 23, 27});

  // profile counts for e0 <= 8
  long n1 = 0, n2 = 0, n3 = 0;
  for (i64 e0 = 1; e0 <= 8; ++e0) {
    n1 += static_cast<long>(enumerate_breaks(e0, 1).size());
    n2 += static_cast<long>(enumerate_breaks(e0, 2).size());
    n3 += static_cast<long>(enumerate_breaks(e0, 3).size());
  }
  CHECK(n1 == 36);
  CHECK(n2 == 102);
  CHECK(n3 == 167);

  for (i64 e0 = 1; e0 <= 8; ++e0)
    for (auto& t : enumerate_breaks(e0, 3)) CHECK(validate_profile(Profile{3, e0, t, 1}).ok);
}

TEST_CASE("classify") {
  auto a = classify_case(Profile::triple(1, 1, 3, 7));
  CHECK(a.value == Case::A);
  CHECK(a.stable);

  auto h = classify_case(Profile::triple(4, 1, 3, 11));
  CHECK(h.value == Case::H);
  CHECK_FALSE(h.stable);

  CHECK(classify_case(Profile::triple(4, 1, 3, 27)).value == Case::F);
  CHECK(to_string(classify_case(Profile{3, 3, {6, 12}, 1}).value) == "EVEN_MAX");

  try {
    classify_case(Profile::triple(4, 1, 3, 17));
    FAIL("expected INVALID_PROFILE");
  } catch (const Error& e) {
    CHECK(e.code == ErrorCode::InvalidProfile);
  }
}

TEST_CASE("no valid triple lands on a boundary up to e0 = 16") {
  long hits = 0;
  for (i64 e0 = 1; e0 <= 16; ++e0)
    for (auto& t : enumerate_breaks(e0, 3)) {
      try {
        classify_case(Profile{3, e0, t, 1});
      } catch (const Error& e) {
        if (e.code == ErrorCode::BoundaryHit) ++hits;
      }
    }
  CHECK(hits == 0);
}

TEST_CASE("stable triples are case A") {
  for (i64 e0 = 1; e0 <= 8; ++e0)
    for (auto& t : enumerate_breaks(e0, 3)) {
      auto lab = classify_case(Profile{3, e0, t, 1});
      if (t[0] >= e0) {
        CHECK(lab.stable);
        CHECK(lab.value == Case::A);
      }
    }
}

// Largest b1 among case E triples with b1 + b2 < 2e0, per e0 (-1: none).
// Always below 2e0/7, but the bound is not sharp.
TEST_CASE("barred E region") {
  const std::vector<i64> want = {-1, -1, -1, -1, -1, 1, 1, 1, 1, 1, 1, 3,
                                 3,  3,  3,  3,  3,  3, 3, 5, 5, 5, 5, 5};
  for (i64 e0 = 1; e0 <= 24; ++e0) {
    i64 mx = -1;
    for (auto& t : enumerate_breaks(e0, 3)) {
      Profile p{3, e0, t, 1};
      if (classify_case(p).value == Case::E && !b3_forced(p)) {
        mx = std::max(mx, t[0]);
        CHECK(7 * t[0] < 2 * e0);
      }
    }
    CHECK(mx == want[static_cast<std::size_t>(e0 - 1)]);
  }
}
