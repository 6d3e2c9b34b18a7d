// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <ostream>
#include <streambuf>

#include "ambigal/sweep.hpp"
#include "ambigal/verify.hpp"

using namespace ambigal;

namespace {

struct NullBuf : std::streambuf {
  int overflow(int c) override { return c; }
};

// Criterion 1 goes through the sweep harness rather than realizable_set.
verify::SuiteResult sweep_counts(i64 e0_max) {
  return verify::detail::timed("sweep distinct counts 1,3,7,23", [&](verify::SuiteResult& r) {
    NullBuf nb;
    std::ostream sink(&nb);
    const std::array<std::size_t, 4> want = {1, 3, 7, 23};
    std::string got;
    for (int n = 0; n <= 3; ++n) {
      auto s = run_sweep(n, e0_max, sink);
      ++r.checked;
      if (s.distinct.size() != want[n] || s.failures) ++r.failures;
      got += (n ? "," : "") + std::to_string(s.distinct.size());
    }
    verify::detail::note(r, "sizes " + got);
  });
}

}  // namespace

int main() {
  verify::Options o;  // e0 <= 8
  auto crit = verify::acceptance(o);
  crit[0].suites.push_back(sweep_counts(o.e0_max));

  const std::array<double, 9> budget = {0, 60, 60, 0, 0, 0, 120, 0, 0};
  int failed = 0;
  for (auto& c : crit) {
    double secs = 0;
    for (auto& s : c.suites) secs += s.seconds;
    bool ok = c.pass() && (budget[c.number] == 0 || secs < budget[c.number]);
    if (!ok) ++failed;
    std::printf("criterion %d: %s  %s (%.2fs)\n", c.number, ok ? "PASS" : "FAIL", c.title.c_str(), secs);
    for (auto& s : c.suites) {
      std::printf("    %-34s %ld/%ld failures", s.name.c_str(), s.failures, s.checked);
      if (!s.detail.empty()) std::printf("  [%s]", s.detail.c_str());
      std::printf("\n");
    }
  }
  return failed ? 1 : 0;
}
