#pragma once

#include <atomic>
#include <cstdlib>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "decomp.hpp"
#include "json.hpp"
#include "verify.hpp"

namespace ambigal {

using nlohmann::json;

inline json to_json(const Multiset& m) {
  json j = json::object();
  for (auto& [mod, k] : m)
    if (k != 0) j[std::string(name(mod))] = k;
  return j;
}

inline json to_json(const Profile& p) {
  return {{"n", p.n}, {"e0", p.e0}, {"breaks", p.breaks}, {"f_exp", p.f_exp}};
}

inline json chars_json(const Decomposition& d) {
  auto c = d.chars();
  return json::array({c[0], c[1], c[2], c[3]});
}

inline unsigned worker_count() {
  if (const char* env = std::getenv("AMBIGAL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// All profiles of a sweep in canonical order: e0 ascending, breaks lexicographic.
inline std::vector<Profile> sweep_profiles(int n, i64 e0_max) {
  std::vector<Profile> out;
  for (i64 e0 = 1; e0 <= e0_max; ++e0) {
    if (n == 0) {
      out.push_back({0, e0, {}, 1});
      continue;
    }
    for (auto& br : enumerate_breaks(e0, n)) out.push_back({n, e0, br, 1});
  }
  return out;
}

struct SweepSummary {
  std::set<Mod> distinct;
  long records = 0;
  long profiles = 0;
  long failures = 0;  // records whose rank or character sum is off, or disagree with the oracle

  json to_json() const {
    json mods = json::array();
    for (Mod m : distinct) mods.push_back(std::string(name(m)));
    return {{"distinct", distinct.size()}, {"records", records}, {"profiles", profiles},
            {"failures", failures}, {"modules", mods}};
  }
};

namespace detail {

struct ProfileChunk {
  std::string text;
  std::set<Mod> support;
  long records = 0;
  long failures = 0;
};

inline ProfileChunk sweep_profile(const Profile& p) {
  ProfileChunk out;
  const i64 e0 = p.e0;
  const i64 want_rank = (i64{1} << p.n) * e0;
  for (i64 i = 0; i < 8 * e0; ++i) {
    Decomposition raw = block(p, i);
    Decomposition norm = normalize(raw);
    json rec;
    rec["profile"] = to_json(p);
    rec["i"] = i;
    rec["case"] = p.s() == 3 ? json(std::string(to_string(classify_case(p).value))) : json(nullptr);
    rec["raw"] = to_json(raw.mult);
    rec["normalized"] = to_json(norm.mult);
    rec["rank_sum"] = norm.rank();
    rec["char_sum"] = chars_json(norm);
    bool ok = norm.rank() == want_rank;
    if (p.n >= 1) {
      // every character constituent of the C_{2^n} regular representation, e0 times
      auto c = norm.chars();
      for (int j = 0; j < 4; ++j) ok = ok && c[j] == (j <= p.n ? e0 : 0);
    }
    if (p.s() == 3) {
      bool agree = verify::window_oracle(i, p).nonzero() == raw.nonzero();
      rec["oracle_status"] = agree ? "agree" : "disagree";
      ok = ok && agree;
    } else {
      rec["oracle_status"] = "n/a";
    }
    if (!ok) ++out.failures;
    for (auto& [m, k] : norm.mult)
      if (k > 0) out.support.insert(m);
    out.text += rec.dump();
    out.text += '\n';
    ++out.records;
  }
  return out;
}

}  // namespace detail

// Streams one JSON line per (profile, i). Profiles are processed by a pool of
// workers; chunks are written strictly in profile order.
inline SweepSummary run_sweep(int n, i64 e0_max, std::ostream& out, unsigned threads = worker_count()) {
  auto profiles = sweep_profiles(n, e0_max);
  SweepSummary sum;
  sum.profiles = static_cast<long>(profiles.size());
  if (profiles.empty()) return sum;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(profiles.size())));

  // process in windows so memory stays bounded on large sweeps
  const std::size_t window = std::max<std::size_t>(threads * 8, 64);
  for (std::size_t base = 0; base < profiles.size(); base += window) {
    const std::size_t end = std::min(profiles.size(), base + window);
    std::vector<detail::ProfileChunk> chunks(end - base);
    std::atomic<std::size_t> next{base};
    auto work = [&] {
      for (std::size_t k; (k = next.fetch_add(1)) < end;) chunks[k - base] = detail::sweep_profile(profiles[k]);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& c : chunks) {
      out << c.text;
      sum.distinct.insert(c.support.begin(), c.support.end());
      sum.records += c.records;
      sum.failures += c.failures;
    }
  }
  if (n == 0) sum.distinct = {Mod::R0};
  return sum;
}

}  // namespace ambigal
