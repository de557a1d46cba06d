// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dtower/drinfeld.hpp"
#include "dtower/towers.hpp"
#include "dtower/verify.hpp"

#ifndef DTOWER_CLI_PATH
#error "DTOWER_CLI_PATH must point at the dtower executable"
#endif

using namespace dtower;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

struct Criterion {
  int id;
  std::string what;
  double limit_seconds;  // 0 means no limit
  std::function<Outcome()> run;
};

std::string tag(const TowerParams& p) {
  return "(q=" + std::to_string(p.q) + ",m=" + std::to_string(p.m) + ",j=" + std::to_string(p.j) + ")";
}

/// Folds check results into an outcome; unreached cases fail when `strict`.
void absorb(Outcome& o, const CheckResult& r, bool strict = true) {
  if (r.skipped) {
    o.pass = false;
    o.note += " " + r.check + tag(r.params) + " skipped;";
    return;
  }
  if (!r.ok()) {
    o.pass = false;
    o.note += " " + r.check + tag(r.params) + " " + r.failures.front().where + ": " + r.failures.front().detail + ";";
  }
  if (strict && !r.unreached.empty()) {
    o.pass = false;
    o.note += " " + r.check + tag(r.params) + " unreached " + r.unreached.front().where + ";";
  }
  if (r.cases_run == 0) {
    o.pass = false;
    o.note += " " + r.check + tag(r.params) + " ran no cases;";
  }
}

std::vector<TowerParams> main_grid() {
  return {TowerParams::make(2, 1, 2, 1), TowerParams::make(2, 1, 3, 2), TowerParams::make(3, 1, 2, 1),
          TowerParams::make(3, 1, 3, 2), TowerParams::make(5, 1, 2, 1)};
}

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(DTOWER_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> cs;

  cs.push_back({1, "eta identity on every nonzero x of the degree-2m ambient", 10, [] {
                  Outcome o;
                  for (const auto& p : main_grid()) {
                    VerifyConfig cfg;
                    cfg.ambient_degree = 2 * p.m;
                    CheckResult r = check_eta_identity_all(p, cfg);
                    absorb(o, r);
                    if (r.cases_run != checked_pow(p.q, 2 * p.m) - 1) {
                      o.pass = false;
                      o.note += " " + tag(p) + " covered " + std::to_string(r.cases_run) + " elements;";
                    }
                  }
                  return o;
                }});

  cs.push_back({2, "isogeny fibers for every x and y, chains of length 3", 30, [] {
                  Outcome o;
                  for (const auto& p : main_grid()) {
                    VerifyConfig cfg;
                    cfg.n_max = 3;
                    absorb(o, check_isogeny_fibers(p, cfg));
                    absorb(o, check_composite_chains(p, cfg));
                  }
                  return o;
                }});

  cs.push_back({3, "fiber size q^(m-1) in a splitting ambient", 30, [] {
                  Outcome o;
                  for (const auto& p : main_grid()) absorb(o, check_fiber_cardinality(p, VerifyConfig{}));
                  return o;
                }});

  cs.push_back({4, "supersingular counts for n in {2,3}", 0, [] {
                  Outcome o;
                  struct Want {
                    TowerParams p;
                    std::uint64_t n2, n3;
                  };
                  for (const auto& w : {Want{TowerParams::make(2, 1, 2, 1), 6, 12}, Want{TowerParams::make(3, 1, 2, 1), 24, 72},
                                        Want{TowerParams::make(2, 1, 3, 2), 28, 112}}) {
                    for (unsigned n : {2u, 3u}) {
                      auto [got, formula] = count_supersingular(w.p, n);
                      std::uint64_t want = n == 2 ? w.n2 : w.n3;
                      if (got != want || formula != want) {
                        o.pass = false;
                        o.note += " " + tag(w.p) + " n=" + std::to_string(n) + " got " + std::to_string(got) + "/" +
                                  std::to_string(formula) + ";";
                      }
                    }
                  }
                  return o;
                }});

  cs.push_back({5, "r/s/u relations on rational and 100 random geometric pairs", 0, [] {
                  Outcome o;
                  for (const auto& p : main_grid()) {
                    VerifyConfig cfg;
                    cfg.random_cases = 100;
                    absorb(o, check_rsu_rational(p, cfg));
                    CheckResult geo = check_rsu_geometric(p, cfg);
                    absorb(o, geo);
                    if (geo.cases_run < 100) {
                      o.pass = false;
                      o.note += " " + tag(p) + " only " + std::to_string(geo.cases_run) + " geometric pairs;";
                    }
                  }
                  return o;
                }});

  cs.push_back({6, "G and H pushforwards", 0, [] {
                  Outcome o;
                  for (const auto& p : main_grid()) {
                    absorb(o, check_pushforward_g(p, VerifyConfig{}));
                    absorb(o, check_pushforward_h(p, VerifyConfig{}));
                  }
                  return o;
                }});

  cs.push_back({7, "trace-defined u-set equals the u-image of supersingular points", 0, [] {
                  Outcome o;
                  for (const auto& p : main_grid()) absorb(o, check_u_set(p, VerifyConfig{}));
                  return o;
                }});

  cs.push_back({8, "level-2 kernels distinct, of size q^(2k), marked point", 0, [] {
                  Outcome o;
                  for (const auto& p : main_grid()) absorb(o, check_theta_level2(p, VerifyConfig{}));
                  return o;
                }});

  cs.push_back({9, "brackets for k=1,2,3, line annihilators, roundtrip at n=1", 0, [] {
                  Outcome o;
                  const TowerParams k1 = TowerParams::make(2, 1, 2, 1), k2 = TowerParams::make(3, 1, 3, 1),
                                    k3 = TowerParams::make(2, 1, 4, 1);
                  if (k1.k != 1 || k2.k != 2 || k3.k != 3) {
                    o.pass = false;
                    o.note += " unexpected k values;";
                  }
                  for (const auto& p : {k1, k2, k3}) {
                    absorb(o, check_brackets(p, VerifyConfig{}));
                    absorb(o, check_line_annihilators(p, VerifyConfig{}));
                  }
                  VerifyConfig one;
                  one.n_max = 1;
                  absorb(o, check_roundtrip_all(k2, one));
                  return o;
                }});

  cs.push_back({10, "torsion of size q^(mn) for n<=2, negative control T-1", 0, [] {
                  Outcome o;
                  for (const auto& p : {TowerParams::make(2, 1, 2, 1), TowerParams::make(3, 1, 2, 1)}) {
                    VerifyConfig cfg;
                    cfg.n_max = 2;
                    absorb(o, check_torsion_cardinality(p, cfg));
                  }
                  return o;
                }});

  cs.push_back({11, "bound values 3/2, 16/5, 21/5", 0, [] {
                  Outcome o;
                  auto want = [&](unsigned p, unsigned m, const std::string& v) {
                    std::string got = ihara_bound(p, m).to_text();
                    if (got != v) {
                      o.pass = false;
                      o.note += " p=" + std::to_string(p) + " m=" + std::to_string(m) + " gave " + got + ";";
                    }
                  };
                  want(2, 1, "3/2");
                  want(3, 1, "16/5");
                  want(2, 2, "21/5");
                  return o;
                }});

  cs.push_back({12, "verify output identical across thread counts", 0, [] {
                  Outcome o;
                  int s1 = 0, s4 = 0;
                  std::string a = run_cli("verify --suite all --threads 1", s1);
                  std::string b = run_cli("verify --suite all --threads 4", s4);
                  if (s1 != 0 || s4 != 0) {
                    o.pass = false;
                    o.note += " exit codes " + std::to_string(s1) + "/" + std::to_string(s4) + ";";
                  }
                  if (a.empty() || a != b) {
                    o.pass = false;
                    o.note += " reports differ;";
                  }
                  return o;
                }});

  return cs;
}

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : criteria()) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note += std::string(" threw: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      o.pass = false;
      o.note += " over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit;";
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << c.what << " [" << secs << " s]";
    if (!o.pass) line << " :" << o.note;
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
