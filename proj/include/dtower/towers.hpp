#pragma once

// The three recursive towers: F (Q_x(y) = x), G (its (q-1)-power image) and
// H (the u-coordinates).  Integer constants such as a, b and 1 enter field
// expressions through their image in the prime field F_p.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtower/isogeny.hpp"
#include "json.hpp"

namespace dtower {

enum class Variant { F, G, H };

std::string_view to_string(Variant v);
/// Accepts "F", "G", "H"; Parse error otherwise.
Variant parse_variant(std::string_view s);

/// A validated coordinate tuple.  F and G points hold x_1..x_n (all nonzero);
/// H points hold u_2..u_n.
class TowerPoint {
 public:
  /// Checks the recursion on consecutive coordinates and rejects degenerate
  /// points (NotOnCurve, ZeroPoint, ZeroDenominator).
  static TowerPoint make(const TowerParams& params, FieldPtr ctx, Variant variant, std::vector<FieldElem> coords);

  Variant variant() const { return variant_; }
  const FieldCtx& ctx() const { return *ctx_; }
  const FieldPtr& ctx_ptr() const { return ctx_; }
  const std::vector<FieldElem>& coords() const { return coords_; }
  /// Least l dividing the ambient degree with every coordinate in F_{q^l}.
  unsigned rationality_degree() const;

 private:
  TowerPoint(Variant v, FieldPtr ctx, std::vector<FieldElem> coords) : variant_(v), ctx_(std::move(ctx)), coords_(std::move(coords)) {}
  Variant variant_;
  FieldPtr ctx_;
  std::vector<FieldElem> coords_;
};

/// tr_j(y / x^{q^k}) + tr_k(y^{q^j} / x) - 1.  ZeroDenominator when x = 0.
FieldElem eval_F(const TowerParams& params, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y);
/// Y (sum_{i<j} Y^{N_i} / X^{N_{k+i}} + sum_{j<=i<m} Y^{N_i} / X^{N_{i-j}})^{q-1} - X.
FieldElem eval_G(const TowerParams& params, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y);
/// (tr_j(v) - a) / (tr_j(u)^{q^k} - a) - (tr_k(v)^{q^j} - b) / (tr_k(u) - b).
FieldElem eval_H(const TowerParams& params, const FieldCtx& ctx, const FieldElem& u, const FieldElem& v);
/// (tr_j(v) - a)(tr_k(u) - b) - (tr_k(v)^{q^j} - b)(tr_j(u)^{q^k} - a); no division.
FieldElem eval_H_cross(const TowerParams& params, const FieldCtx& ctx, const FieldElem& u, const FieldElem& v);
/// Both H denominators are nonzero at u.
bool h_denominators_nonzero(const TowerParams& params, const FieldCtx& ctx, const FieldElem& u);

/// All y in the ambient with Q_x(y) = x, canonical order.
std::vector<FieldElem> fiber_solutions(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x);

struct EnumOptions {
  FieldOptions field;
};

/// Every rational point of the given level over F_{q^m}: coordinates in
/// F_{q^m}^*, recursion satisfied, non-degenerate.  Lexicographic canonical
/// order.  Parallel over the first coordinate.
std::vector<TowerPoint> enumerate_rational(const TowerParams& params, unsigned n, Variant variant, EnumOptions opts = {});
/// Single-threaded reference with the same contract.
std::vector<TowerPoint> enumerate_rational_serial(const TowerParams& params, unsigned n, Variant variant, EnumOptions opts = {});

/// F: x_1^{q^m - 1} = 1.  G: X_1^{N_m} = 1.  H: tr_m(u_i) = a + b for all i.
bool is_supersingular_point(const TowerParams& params, const TowerPoint& pt);

/// (q^m - 1) q^{(m-1)(n-1)}.
std::uint64_t supersingular_formula(const TowerParams& params, unsigned n);
/// (enumerated supersingular F points, formula value).
std::pair<std::uint64_t, std::uint64_t> count_supersingular(const TowerParams& params, unsigned n, EnumOptions opts = {});

struct RSU {
  FieldElem r, s, u;
  bool operator==(const RSU&) const = default;
};

/// R = y / x^{q^k}, S = y^{q^j} / x, u = sum_{r<a} R^{q^{rk}} + (sum_{s<b} S^{q^{sj}})^q.
/// ZeroPoint when x = 0, NotOnCurve unless eval_F(x, y) = 0.
RSU rsu(const TowerParams& params, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y);
/// R = tr_k(u) - b and S = -tr_j(u) + a.
bool rsu_relations_hold(const TowerParams& params, const FieldCtx& ctx, const RSU& t);
/// u-values of consecutive pairs of an F point: (u_2, ..., u_n).
std::vector<FieldElem> u_coordinates(const TowerParams& params, const TowerPoint& pt);

/// (mu x_1, mu^{q^k} x_2, ..., mu^{q^{k(n-1)}} x_n).  NotInSubfield unless mu in F_{q^m}^*.
TowerPoint galois_action(const TowerParams& params, const FieldElem& mu, const TowerPoint& pt);
/// (mu x_1, ..., mu x_n) for mu in F_q^*.
TowerPoint base_scaling(const TowerParams& params, const FieldElem& mu, const TowerPoint& pt);

/// {(u_2, ..., u_n) in (F_{q^m}^*)^{n-1} : tr_m(u_i) = a + b}, lexicographic.
std::vector<std::vector<FieldElem>> ssing_u_set(const TowerParams& params, unsigned n, EnumOptions opts = {});

struct Rational {
  std::uint64_t num = 0, den = 1;
  std::string to_text() const { return std::to_string(num) + "/" + std::to_string(den); }
  bool operator==(const Rational&) const = default;
};

/// 2(p^{m+1} - 1) / (p + 1 + (p - 1)/(p^m - 1)) in lowest terms.
Rational ihara_bound(unsigned p, unsigned m);

/// {variant, params, coords, supersingular}.
nlohmann::json point_record(const TowerParams& params, const TowerPoint& pt);
/// Parses a record, rebuilding the ambient F_{q^m}; revalidates the recursion.
TowerPoint read_point_record(const nlohmann::json& rec, TowerParams& params_out);
nlohmann::json params_record(const TowerParams& params);

}  // namespace dtower
