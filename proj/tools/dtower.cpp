// dtower: command-line front end for tower enumeration and verification.
//
// Exit status: 0 ok, 1 property failure, 2 usage or validation error,
// 3 resource cap exceeded.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dtower/parallel.hpp"
#include "dtower/towers.hpp"
#include "dtower/verify.hpp"
#include "json.hpp"

namespace {

using namespace dtower;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct RunConfig {
  unsigned p = 2, e = 1, m = 2, j = 1;
  unsigned n = 1;
  std::string variant = "F";
  std::optional<unsigned> ambient_degree;
  std::uint64_t max_elements = FieldOptions{}.max_elements;
  std::string format = "json";
  int threads = 0;
  std::uint64_t seed = 1;
  // verify only
  std::string suite;
  unsigned n_max = 3;
  unsigned random_cases = 100;
  bool explicit_params = false;
  // fibers only
  std::string x;
  // bound only
  unsigned bound_p = 0, bound_m = 0;

  TowerParams params() const { return TowerParams::make(p, e, m, j); }

  /// Threads are left out so that reports do not depend on them.
  json to_json() const {
    json j{{"p", p}, {"e", e}, {"m", m}, {"j", this->j}, {"n", n}, {"variant", variant}, {"max_elements", max_elements},
           {"format", format}, {"seed", seed}};
    j["ambient_degree"] = ambient_degree ? json(*ambient_degree) : json(nullptr);
    return j;
  }
};

void add_params(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--p", cfg.p, "characteristic")->check(CLI::PositiveNumber);
  sub->add_option("--e", cfg.e, "q = p^e")->check(CLI::PositiveNumber);
  sub->add_option("--m", cfg.m, "rank")->check(CLI::PositiveNumber);
  sub->add_option("--j", cfg.j, "middle index, 0 < j < m")->check(CLI::PositiveNumber);
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--threads", cfg.threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  sub->add_option("--ambient-degree", cfg.ambient_degree, "ambient degree over F_q");
  sub->add_option("--seed", cfg.seed, "seed for randomized checks");
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_points(const RunConfig& cfg) {
  TowerParams params = cfg.params();
  Variant v = parse_variant(cfg.variant);
  auto pts = enumerate_rational(params, cfg.n, v, EnumOptions{FieldOptions{cfg.max_elements}});
  if (cfg.format == "csv") {
    const std::size_t width = v == Variant::H ? cfg.n - 1 : cfg.n;
    std::cout << "variant,p,e,m,j,n";
    for (std::size_t i = 0; i < width; ++i) std::cout << ",c" << (v == Variant::H ? i + 2 : i + 1);
    std::cout << ",supersingular\n";
    for (const auto& pt : pts) {
      std::cout << to_string(v) << ',' << cfg.p << ',' << cfg.e << ',' << cfg.m << ',' << cfg.j << ',' << cfg.n;
      for (const auto& c : pt.coords()) std::cout << ',' << csv_quote(pt.ctx().to_text(c));
      std::cout << ',' << (is_supersingular_point(params, pt) ? "true" : "false") << '\n';
    }
    return kExitOk;
  }
  json out = json::array();
  for (const auto& pt : pts) out.push_back(point_record(params, pt));
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_fibers(const RunConfig& cfg) {
  TowerParams params = cfg.params();
  FieldPtr ctx = make_ambient(params, cfg.ambient_degree.value_or(params.m), FieldOptions{cfg.max_elements});
  FieldElem x = ctx->parse(cfg.x);
  if (x.is_zero()) throw Error(ErrorCode::kZeroPoint, "x must be nonzero");
  json sols = json::array();
  for (const auto& y : fiber_solutions(params, ctx, x)) sols.push_back(ctx->to_text(y));
  json out{{"config", cfg.to_json()}, {"x", ctx->to_text(x)}, {"ambient_degree", ctx->d()}, {"solutions", sols}};
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_ss_count(const RunConfig& cfg) {
  auto [got, want] = count_supersingular(cfg.params(), cfg.n, EnumOptions{FieldOptions{cfg.max_elements}});
  json out{{"config", cfg.to_json()}, {"enumerated", got}, {"formula", want}};
  std::cout << out.dump(2) << '\n';
  return got == want ? kExitOk : kExitFailure;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyConfig vc;
  vc.grid = cfg.explicit_params ? std::vector<TowerParams>{cfg.params()} : default_grid();
  vc.ambient_degree = cfg.ambient_degree;
  vc.n_max = cfg.n_max;
  vc.seed = cfg.seed;
  vc.random_cases = cfg.random_cases;
  vc.field = FieldOptions{cfg.max_elements};
  auto results = run_suite(cfg.suite, vc);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.ok();
  json grid = json::array();
  for (const auto& t : vc.grid) grid.push_back(params_record(t));
  json conf = cfg.to_json();
  conf["suite"] = cfg.suite;
  conf["n_max"] = cfg.n_max;
  conf["random_cases"] = cfg.random_cases;
  conf["grid"] = grid;
  json out{{"config", conf}, {"results", to_json(results)}, {"ok", ok}};
  std::cout << out.dump(2) << '\n';
  return ok ? kExitOk : kExitFailure;
}

int cmd_bound(const RunConfig& cfg) {
  std::cout << ihara_bound(cfg.bound_p, cfg.bound_m).to_text() << '\n';
  return kExitOk;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kSizeCapExceeded:
    case ErrorCode::kNoSplittingFound:
    case ErrorCode::kNotFoundWithinBound:
    case ErrorCode::kAmbientTooSmall:
      return kExitResource;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* cap = std::getenv("DTOWER_MAX_ELEMENTS")) {
    try {
      cfg.max_elements = std::stoull(cap);
    } catch (const std::exception&) {
      std::cerr << "error: DTOWER_MAX_ELEMENTS must be a positive integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Drinfeld module towers: enumeration and verification"};
  app.require_subcommand(1);

  auto* points = app.add_subcommand("points", "enumerate rational points of a tower level");
  add_params(points, cfg);
  add_common(points, cfg);
  points->add_option("--n", cfg.n, "level")->check(CLI::PositiveNumber);
  points->add_option("--variant", cfg.variant, "tower variant")->check(CLI::IsMember({"F", "G", "H"}));
  points->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  auto* fibers = app.add_subcommand("fibers", "solutions y of Q_x(y) = x");
  add_params(fibers, cfg);
  add_common(fibers, cfg);
  fibers->add_option("--x", cfg.x, "element in text form, e.g. [0,1]")->required();

  auto* ss = app.add_subcommand("ss-count", "count supersingular points against the closed form");
  add_params(ss, cfg);
  add_common(ss, cfg);
  ss->add_option("--n", cfg.n, "level")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run a property suite; JSON report");
  add_params(verify, cfg);
  add_common(verify, cfg);
  std::vector<std::string> suites = suite_names();
  verify->add_option("--suite", cfg.suite, "suite name")->required()->check(CLI::IsMember(suites));
  verify->add_option("--n-max", cfg.n_max, "highest tower level")->check(CLI::PositiveNumber);
  verify->add_option("--random-cases", cfg.random_cases, "random geometric samples");
  verify->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json"}));

  auto* bound = app.add_subcommand("bound", "exact value of the lower bound for A(p^{2m})");
  bound->add_option("--p", cfg.bound_p, "prime")->required();
  bound->add_option("--m", cfg.bound_m, "exponent")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  cfg.explicit_params = verify->count("--p") + verify->count("--e") + verify->count("--m") + verify->count("--j") > 0;
  set_worker_count(cfg.threads);

  try {
    if (*points) return cmd_points(cfg);
    if (*fibers) return cmd_fibers(cfg);
    if (*ss) return cmd_ss_count(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*bound) return cmd_bound(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}
