#pragma once

// Property suites run over a parameter grid.  Each check reports how many
// cases it ran and every failing case; nothing aborts on the first failure.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dtower/isogeny.hpp"
#include "json.hpp"

namespace dtower {

struct CaseFailure {
  std::string where;
  std::string detail;
};

struct CheckResult {
  std::string check;
  TowerParams params;
  unsigned ambient_degree = 0;
  std::uint64_t cases_run = 0;
  std::vector<CaseFailure> failures;
  /// Cases whose splitting ambient lies beyond the scan cap; reported, but
  /// not failures.
  std::vector<CaseFailure> unreached;
  bool skipped = false;
  std::string skip_reason;

  bool ok() const { return failures.empty(); }
};

struct VerifyConfig {
  std::vector<TowerParams> grid;
  /// Replaces the per-check default ambient where a check has one.
  std::optional<unsigned> ambient_degree;
  unsigned n_max = 3;
  std::uint64_t seed = 1;
  unsigned random_cases = 100;
  /// Cap on subspace generators tried by the roundtrip check.
  unsigned roundtrip_limit = 64;
  /// Enumeration cap.
  FieldOptions field;
  /// Splitting-ambient searches may build (but never enumerate) fields up to
  /// this many elements, and stop at this degree.
  std::uint64_t scan_cap = std::uint64_t{1} << 48;
  unsigned max_scan_degree = 48;
};

/// (2,2,1), (2,3,2), (3,2,1), (3,3,2), (4,3,2), (5,2,1) as (q, m, j).
std::vector<TowerParams> default_grid();

std::vector<std::string> suite_names();
bool is_suite(std::string_view name);

/// Runs one named suite ("all" runs every suite) over cfg.grid.  Parse error
/// on an unknown name.
std::vector<CheckResult> run_suite(std::string_view suite, const VerifyConfig& cfg);

// Individual checks, one grid entry each.
CheckResult check_eta_identity_all(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_isogeny_fibers(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_composite_chains(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_theta_level2(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_roundtrip_all(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_line_annihilators(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_brackets(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_torsion_cardinality(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_isomorphism_criterion(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_point_modules(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_supersingular_counts(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_fiber_closure(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_fiber_cardinality(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_rsu_rational(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_rsu_geometric(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_pushforward_g(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_pushforward_h(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_u_set(const TowerParams& p, const VerifyConfig& cfg);
CheckResult check_galois_action(const TowerParams& p, const VerifyConfig& cfg);

nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const std::vector<CheckResult>& rs);

/// Least multiple D of `step` (D <= cfg.max_scan_degree, q^D <= cfg.scan_cap)
/// for which `accept(ambient)` holds.
template <class Pred>
std::optional<FieldPtr> scan_ambients(const TowerParams& p, unsigned step, const VerifyConfig& cfg, Pred&& accept) {
  FieldOptions opts{cfg.scan_cap};
  for (unsigned d = step; d <= cfg.max_scan_degree && d <= kMaxExtDegree; d += step) {
    if (saturating_pow(p.q, d) > cfg.scan_cap) break;
    FieldPtr ctx = make_ambient(p, d, opts);
    if (accept(ctx)) return ctx;
  }
  return std::nullopt;
}

}  // namespace dtower
