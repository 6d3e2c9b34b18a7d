// ambigal: command line front end.
//
//   ambigal validate  --e0 4 --breaks 1,3,17
//   ambigal classify  --e0 4 --breaks 1,3,11
//   ambigal decompose --e0 1 --breaks 1,3,7 --i 0 --normalize
//   ambigal sweep     --n 3 --e0-max 8 --out sweep.jsonl
//   ambigal verify    --e0-max 6 --report report.json
//
// Exit status: 0 ok, 1 usage or I/O, 2 invalid profile, 3 invariant breach.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ambigal/sweep.hpp"
#include "ambigal/verify.hpp"
#include "json.hpp"

using namespace ambigal;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kBreach = 3 };

struct ProfileFlags {
  i64 e0 = 1;
  std::vector<i64> breaks;
  int n = 3;
  i64 f_exp = 1;

  void attach(CLI::App* sub) {
    sub->add_option("--e0", e0, "absolute ramification index over Q_2")->required();
    sub->add_option("--breaks", breaks, "lower ramification breaks b1,b2,...")->delimiter(',');
    sub->add_option("--n", n, "log2 of the extension degree")->check(CLI::Range(0, 3));
    sub->add_option("--f-exp", f_exp, "residue degree factor")->check(CLI::PositiveNumber);
  }
  Profile profile() const { return {n, e0, breaks, f_exp}; }
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

int fail(Exit code, const std::string& msg) {
  emit({{"error", msg}});
  return code;
}

int code_for(const Error& e) {
  switch (e.code) {
    case ErrorCode::InvalidProfile:
    case ErrorCode::UnsupportedEven: return kInvalid;
    default: return kBreach;
  }
}

int cmd_validate(const ProfileFlags& f) {
  auto rep = validate_profile(f.profile());
  json v = json::array();
  for (auto& x : rep.violations) v.push_back(x.message);
  emit({{"ok", rep.ok}, {"violations", v}});
  return rep.ok ? kOk : kInvalid;
}

int cmd_classify(const ProfileFlags& f) {
  try {
    auto lab = classify_case(f.profile());
    emit({{"case", std::string(to_string(lab.value))}, {"stable", lab.stable}});
    return kOk;
  } catch (const Error& e) {
    return fail(e.code == ErrorCode::BoundaryHit ? kBreach : Exit(code_for(e)), e.what());
  }
}

int cmd_decompose(const ProfileFlags& f, i64 i, bool norm) {
  const Profile p = f.profile();
  try {
    auto th = assemble_theorem(p, i);
    Decomposition n = normalize(th.inner);
    json j;
    if (p.parity() == Parity::Even) j["case"] = "EVEN_MAX";
    else if (p.s() == 3) j["case"] = std::string(to_string(classify_case(p).value));
    else j["case"] = nullptr;
    j["modules"] = to_json(th.inner.mult);
    if (norm) j["normalized"] = to_json(n.mult);
    j["rank"] = n.rank();
    j["char"] = chars_json(n);
    j["n"] = th.n;
    j["s"] = th.s;
    j["f_exp"] = th.f_exp;
    j["index"] = th.index;
    j["total_rank"] = th.total_rank();
    emit(j);
    return kOk;
  } catch (const Error& e) {
    return fail(Exit(code_for(e)), e.what());
  }
}

int cmd_sweep(int n, i64 e0_max, const std::string& out, std::string summary) {
  namespace fs = std::filesystem;
  if (summary.empty()) summary = out + ".summary.json";
  SweepSummary sum;
  {
    std::ofstream os(out, std::ios::binary);
    if (!os) return fail(kUsage, "cannot open " + out);
    sum = run_sweep(n, e0_max, os);
    os.flush();
    if (!os) {
      os.close();
      std::error_code ec;
      fs::remove(out, ec);
      return fail(kUsage, "write failed on " + out);
    }
  }
  json s = sum.to_json();
  s["n"] = n;
  s["e0_max"] = e0_max;
  std::ofstream ss(summary, std::ios::binary);
  ss << s.dump(2) << '\n';
  ss.flush();
  if (!ss) {
    std::error_code ec;
    fs::remove(out, ec);
    fs::remove(summary, ec);
    return fail(kUsage, "write failed on " + summary);
  }
  emit(s);
  return sum.failures ? kBreach : kOk;
}

json suite_json(const verify::SuiteResult& r) {
  return {{"name", r.name},       {"pass", r.pass},         {"informational", r.informational},
          {"checked", r.checked}, {"failures", r.failures}, {"detail", r.detail}};
}

int cmd_verify(i64 e0_max, const std::string& report) {
  verify::Options o;
  o.e0_max = e0_max;
  o.e0_max_nonneg = std::max<i64>(e0_max, o.e0_max_nonneg);
  std::vector<verify::CellVerdict> cells;
  auto suites = verify::all_suites(o, &cells);

  bool ok = true;
  json js = json::array();
  for (auto& r : suites) {
    js.push_back(suite_json(r));
    if (!r.pass && !r.informational) ok = false;
    std::fprintf(stderr, "%-40s %s  %ld/%ld  %.2fs\n", r.name.c_str(), r.pass ? "pass" : "FAIL", r.failures,
                 r.checked, r.seconds);
  }
  json jc = json::array();
  for (auto& c : cells) {
    if (!c.resolved()) ok = false;
    if (c.printed_failures == 0 && c.adopted.empty()) continue;
    json e = {{"case", std::string(to_string(c.column))},
              {"row", c.row},
              {"module", std::string(name(c.mod))},
              {"printed", c.printed},
              {"printed_failures", c.printed_failures},
              {"checked", c.checked}};
    if (!c.adopted.empty()) {
      e["adopted"] = c.adopted;
      e["adopted_failures"] = c.adopted_failures;
    } else {
      e["adopted"] = nullptr;
    }
    e["resolved"] = c.resolved();
    jc.push_back(e);
  }
  json rep = {{"e0_max", e0_max}, {"ok", ok}, {"suites", js}, {"cells", jc}};
  if (!report.empty()) {
    std::ofstream os(report, std::ios::binary);
    os << rep.dump(2) << '\n';
    if (!os) return fail(kUsage, "write failed on " + report);
  }
  emit({{"ok", ok}, {"suites", suites.size()}, {"ledgered_cells", jc.size()}});
  return ok ? kOk : kBreach;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galois module structure of ambiguous ideals in cyclic 2-power extensions"};
  app.require_subcommand(1);

  ProfileFlags vf, cf, df;
  auto* v = app.add_subcommand("validate", "check a ramification profile");
  vf.attach(v);
  auto* c = app.add_subcommand("classify", "case label of a three-break profile");
  cf.attach(c);

  auto* d = app.add_subcommand("decompose", "indecomposable decomposition of an ideal");
  df.attach(d);
  i64 di = 0;
  bool dnorm = false;
  d->add_option("--i", di, "ideal exponent")->required();
  d->add_flag("--normalize", dnorm, "rewrite I and M in terms of R0, R1, R2, GR2");

  auto* s = app.add_subcommand("sweep", "all profiles and ideals up to a bound, as JSONL");
  int sn = 3;
  i64 se = 8;
  std::string sout, ssum;
  s->add_option("--n", sn)->check(CLI::Range(0, 3));
  s->add_option("--e0-max", se)->check(CLI::PositiveNumber);
  s->add_option("--out", sout)->required();
  s->add_option("--summary", ssum, "summary path (default <out>.summary.json)");

  auto* r = app.add_subcommand("verify", "run the invariant suites");
  i64 re = 6;
  std::string rrep;
  r->add_option("--e0-max", re)->check(CLI::PositiveNumber);
  r->add_option("--report", rrep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*v) return cmd_validate(vf);
    if (*c) return cmd_classify(cf);
    if (*d) return cmd_decompose(df, di, dnorm);
    if (*s) return cmd_sweep(sn, se, sout, ssum);
    if (*r) return cmd_verify(re, rrep);
  } catch (const std::exception& e) {
    return fail(kBreach, e.what());
  }
  return kUsage;
}
