#pragma once

// Isogenies between the point-attached modules phi^x: the operators eta_x,
// lambda_x and Q_x, the twisted module Phi_T = phi_{F(T)} with
// F(T) = 1 - (1 - T)^k, and the kernel spaces of composite isogenies.

#include <utility>
#include <vector>

#include "dtower/drinfeld.hpp"
#include "dtower/ore.hpp"

namespace dtower {

/// Rank data shared by the towers: m = j + k, gcd(j, k) = 1 and a k - b j = 1
/// with a, b the least nonnegative solution.
struct TowerParams {
  unsigned p = 0, e = 0, q = 0;
  unsigned m = 0, j = 0, k = 0;
  unsigned a = 0, b = 0;
  /// True when p | k; the F(T) machinery and the tower statements need it false.
  bool p_divides_k = false;

  static TowerParams make(unsigned p, unsigned e, unsigned m, unsigned j);

  bool operator==(const TowerParams&) const = default;
};

/// Builds the ambient F_{q^d} for these parameters.
FieldPtr make_ambient(const TowerParams& params, unsigned d, FieldOptions opts = {});

/// Nonzero x_1, ..., x_n with Q_{x_i}(x_{i+1}) = x_i (checked on construction).
class XChain {
 public:
  static XChain make(const TowerParams& params, FieldPtr ctx, std::vector<FieldElem> coords);

  const TowerParams& params() const { return params_; }
  const FieldCtx& ctx() const { return *ctx_; }
  const FieldPtr& ctx_ptr() const { return ctx_; }
  const std::vector<FieldElem>& coords() const { return coords_; }
  std::size_t length() const { return coords_.size(); }

 private:
  XChain(TowerParams params, FieldPtr ctx, std::vector<FieldElem> coords)
      : params_(params), ctx_(std::move(ctx)), coords_(std::move(coords)) {}
  TowerParams params_;
  FieldPtr ctx_;
  std::vector<FieldElem> coords_;
};

/// 1 + x^{1-q} tau + ... + x^{1-q^{k-1}} tau^{k-1}.
TwistedPoly eta(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x);
/// x^{q^k - 1} - tau^k.
TwistedPoly lambda_poly(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x);
/// sum_{i<j} x^{1-q^{k+i}} tau^i + tau^j + sum_{j<i<m} x^{1-q^{i-j}} tau^i.
TwistedPoly q_poly(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x);

/// phi^x for these parameters.
DrinfeldModule point_module(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x);

/// lambda phi_T == psi_T lambda.
bool check_intertwine(const TwistedPoly& lambda, const DrinfeldModule& phi, const DrinfeldModule& psi);
/// eta_x phi^x_T == Q_x lambda_x.
bool check_eta_identity(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x);

/// lambda_{x_l} ... lambda_{x_1} for the first l coordinates of the chain.
TwistedPoly composite_lambda(const XChain& chain, std::size_t l);

/// (F, f) with F = 1 - (1 - T)^k = T f.  CharacteristicDividesK when p | k.
std::pair<APoly, APoly> big_f_and_f(const TowerParams& params, std::shared_ptr<const BaseField> base);
/// phi_{F(T)}.
TwistedPoly big_phi(const DrinfeldModule& phi, const TowerParams& params);
/// phi_{F(T)^n}.
TwistedPoly big_phi_power(const DrinfeldModule& phi, const TowerParams& params, unsigned n);

/// Row kappa holds the coefficients c_{kappa,i} (i = 0..kappa) of
/// (tau^m - g tau^j)^kappa = sum_i c_{kappa,i} tau^{kappa j + i k}, computed by
/// the two-term recursion.  Row k is cross-checked against big_phi
/// (BracketMismatch on disagreement).
std::vector<std::vector<FieldElem>> bracket_table(const DrinfeldModule& phi, const TowerParams& params);
/// Last row of bracket_table.
std::vector<FieldElem> bracket_coeffs(const DrinfeldModule& phi, const TowerParams& params);

/// Ker(lambda_{x_n} ... lambda_{x_1}).
Subspace e_space(const XChain& chain);
/// {h in e_space : Phi_{T^{n-1}}(h) = x_1} with Phi built from phi^{x_1}.
std::vector<FieldElem> marked_preimages(const XChain& chain);
/// Every marked preimage h maps to x_n under lambda_{x_{n-1}} ... lambda_{x_1}.
/// NoMarkedPreimage when there is none.
bool check_marked_point(const XChain& chain);

/// F_{q^k}-span of a set, as an F_q-subspace.  DegreeNotDividing unless k | d.
Subspace span_qk(const TowerParams& params, const FieldPtr& ctx, std::span<const FieldElem> gens);
Subspace span_qk(const TowerParams& params, const Subspace& s);

/// For g a cyclic submodule isomorphic to A/(T^n) inside Ker(phi_{T^n}):
/// phi_{f^n}(span_qk(g)) == g and span_qk(phi_{f^n}(span_qk(g))) == span_qk(g).
/// NotCyclic when g fails the precondition.
bool check_roundtrip(const TowerParams& params, const DrinfeldModule& phi, const Subspace& g, unsigned n);

/// With phi = phi^x: F(T) kills F_{q^k} x, (1 - T) acts there as mu x -> mu^{q^j} x,
/// and no proper divisor of F kills all of it.
bool check_line_annihilator(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x);

}  // namespace dtower
