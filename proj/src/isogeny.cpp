#include "dtower/isogeny.hpp"

#include <numeric>

namespace dtower {

TowerParams TowerParams::make(unsigned p, unsigned e, unsigned m, unsigned j) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::kPrecondition, "e must be positive");
  if (m < 2 || j < 1 || j >= m)
    throw Error(ErrorCode::kBadRankPair, "need 2 <= m and 1 <= j < m, got m=" + std::to_string(m) + " j=" + std::to_string(j));
  if (std::gcd(j, m - j) != 1)
    throw Error(ErrorCode::kBadRankPair, "gcd(j, m - j) must be 1, got m=" + std::to_string(m) + " j=" + std::to_string(j));
  TowerParams t;
  t.p = p;
  t.e = e;
  const std::uint64_t q = saturating_pow(p, e);
  if (q > kMaxBaseOrder) throw Error(ErrorCode::kSizeCapExceeded, "q = p^e above " + std::to_string(kMaxBaseOrder));
  t.q = static_cast<unsigned>(q);
  t.m = m;
  t.j = j;
  t.k = m - j;
  for (unsigned a = 1;; ++a) {
    if ((a * t.k - 1) % j == 0) {
      t.a = a;
      t.b = (a * t.k - 1) / j;
      break;
    }
  }
  t.p_divides_k = t.k % p == 0;
  return t;
}

FieldPtr make_ambient(const TowerParams& params, unsigned d, FieldOptions opts) {
  return make_field(params.p, params.e, d, opts);
}

XChain XChain::make(const TowerParams& params, FieldPtr ctx, std::vector<FieldElem> coords) {
  if (coords.empty()) throw Error(ErrorCode::kPrecondition, "a chain needs at least one coordinate");
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i].is_zero()) throw Error(ErrorCode::kZeroPoint, "chain coordinate " + std::to_string(i + 1) + " is zero");
  for (std::size_t i = 0; i + 1 < coords.size(); ++i)
    if (evaluate(q_poly(params, ctx, coords[i]), coords[i + 1]) != coords[i])
      throw Error(ErrorCode::kNotOnCurve, "Q_x(y) != x at chain step " + std::to_string(i + 1));
  return XChain(params, std::move(ctx), std::move(coords));
}

namespace {

void require_nonzero(const FieldElem& x) {
  if (x.is_zero()) throw Error(ErrorCode::kZeroPoint, "operator needs x != 0");
}

void require_p_not_dividing_k(const TowerParams& params) {
  if (params.p_divides_k)
    throw Error(ErrorCode::kCharacteristicDividesK, "p = " + std::to_string(params.p) + " divides k = " + std::to_string(params.k));
}

}  // namespace

TwistedPoly eta(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x) {
  require_nonzero(x);
  std::vector<FieldElem> c(params.k);
  c[0] = ctx->one();
  for (unsigned i = 1; i < params.k; ++i) c[i] = ctx->qpow_ratio(x, 0, i);
  return TwistedPoly(ctx, std::move(c));
}

TwistedPoly lambda_poly(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x) {
  require_nonzero(x);
  std::vector<FieldElem> c(params.k + 1);
  c[0] = ctx->qpow_ratio(x, params.k, 0);
  c[params.k] = ctx->neg(ctx->one());
  return TwistedPoly(ctx, std::move(c));
}

TwistedPoly q_poly(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x) {
  require_nonzero(x);
  std::vector<FieldElem> c(params.m);
  for (unsigned i = 0; i < params.j; ++i) c[i] = ctx->qpow_ratio(x, 0, params.k + i);
  c[params.j] = ctx->one();
  for (unsigned i = params.j + 1; i < params.m; ++i) c[i] = ctx->qpow_ratio(x, 0, i - params.j);
  return TwistedPoly(ctx, std::move(c));
}

DrinfeldModule point_module(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x) {
  return module_from_point(ctx, params.m, params.j, x);
}

bool check_intertwine(const TwistedPoly& lambda, const DrinfeldModule& phi, const DrinfeldModule& psi) {
  return lambda * phi.phi_t() == psi.phi_t() * lambda;
}

bool check_eta_identity(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x) {
  return eta(params, ctx, x) * point_module(params, ctx, x).phi_t() == q_poly(params, ctx, x) * lambda_poly(params, ctx, x);
}

TwistedPoly composite_lambda(const XChain& chain, std::size_t l) {
  TwistedPoly acc = TwistedPoly::constant(chain.ctx_ptr(), chain.ctx().one());
  for (std::size_t i = 0; i < l && i < chain.length(); ++i)
    acc = lambda_poly(chain.params(), chain.ctx_ptr(), chain.coords()[i]) * acc;
  return acc;
}

std::pair<APoly, APoly> big_f_and_f(const TowerParams& params, std::shared_ptr<const BaseField> base) {
  require_p_not_dividing_k(params);
  APoly one = APoly::constant(base, 1);
  APoly one_minus_t = APoly::from_integers(base, {1, -1});
  APoly big = one - pow(one_minus_t, params.k);
  // big has zero constant term, so dividing by T is a shift.
  std::vector<Digit> shifted(big.coeffs().begin() + 1, big.coeffs().end());
  return {big, APoly(base, std::move(shifted))};
}

TwistedPoly big_phi(const DrinfeldModule& phi, const TowerParams& params) {
  return phi_a(phi, big_f_and_f(params, coefficient_ring(phi)).first);
}

TwistedPoly big_phi_power(const DrinfeldModule& phi, const TowerParams& params, unsigned n) {
  return phi_a(phi, pow(big_f_and_f(params, coefficient_ring(phi)).first, n));
}

std::vector<std::vector<FieldElem>> bracket_table(const DrinfeldModule& phi, const TowerParams& params) {
  require_p_not_dividing_k(params);
  const FieldCtx& ctx = phi.ctx();
  const FieldElem& g = phi.g();
  const unsigned k = params.k;
  std::vector<std::vector<FieldElem>> rows(k + 1);
  rows[0] = {ctx.one()};
  // Running value of g^{1 + q^j + ... + q^{(kappa-1) j}}.
  FieldElem gpow = ctx.one();
  for (unsigned kappa = 1; kappa <= k; ++kappa) {
    gpow = ctx.mul(gpow, ctx.frobenius(g, static_cast<std::uint64_t>(kappa - 1) * params.j));
    auto& row = rows[kappa];
    row.resize(kappa + 1);
    row[0] = kappa % 2 == 0 ? gpow : ctx.neg(gpow);
    row[kappa] = ctx.one();
    for (unsigned i = 1; i < kappa; ++i)
      row[i] = ctx.sub(ctx.frobenius(rows[kappa - 1][i - 1], params.m), ctx.mul(g, ctx.frobenius(rows[kappa - 1][i], params.j)));
  }
  // Cross-check: Phi_T = 1 - sum_i row_k[i] tau^{(i + j) k}.
  std::vector<FieldElem> expect(static_cast<std::size_t>(k) * params.m + 1);
  expect[0] = ctx.one();
  for (unsigned i = 0; i <= k; ++i) {
    std::size_t pos = static_cast<std::size_t>(i + params.j) * k;
    expect[pos] = ctx.sub(expect[pos], rows[k][i]);
  }
  if (TwistedPoly(phi.ctx_ptr(), expect) != big_phi(phi, params))
    throw Error(ErrorCode::kBracketMismatch, "bracket recursion disagrees with the expanded twisted module");
  return rows;
}

std::vector<FieldElem> bracket_coeffs(const DrinfeldModule& phi, const TowerParams& params) {
  return bracket_table(phi, params).back();
}

Subspace e_space(const XChain& chain) { return kernel(composite_lambda(chain, chain.length())); }

std::vector<FieldElem> marked_preimages(const XChain& chain) {
  const auto& params = chain.params();
  const FieldElem& x1 = chain.coords()[0];
  const unsigned n = static_cast<unsigned>(chain.length());
  TwistedPoly big = big_phi_power(point_module(params, chain.ctx_ptr(), x1), params, n - 1);
  std::vector<FieldElem> out;
  for (const auto& h : e_space(chain).elements())
    if (evaluate(big, h) == x1) out.push_back(h);
  return out;
}

bool check_marked_point(const XChain& chain) {
  auto hs = marked_preimages(chain);
  if (hs.empty()) throw Error(ErrorCode::kNoMarkedPreimage, "no h in E_n maps to x_1");
  TwistedPoly head = composite_lambda(chain, chain.length() - 1);
  for (const auto& h : hs)
    if (evaluate(head, h) != chain.coords().back()) return false;
  return true;
}

Subspace span_qk(const TowerParams& params, const FieldPtr& ctx, std::span<const FieldElem> gens) {
  auto basis = ctx->subfield_basis(params.k);
  std::vector<FieldElem> all;
  all.reserve(basis.size() * gens.size());
  for (const auto& s : gens)
    for (const auto& r : basis) all.push_back(ctx->mul(r, s));
  return Subspace::span(ctx, all);
}

Subspace span_qk(const TowerParams& params, const Subspace& s) { return span_qk(params, s.ctx_ptr(), s.basis()); }

bool check_roundtrip(const TowerParams& params, const DrinfeldModule& phi, const Subspace& g, unsigned n) {
  require_p_not_dividing_k(params);
  auto base = coefficient_ring(phi);
  const APoly tn = APoly::t_power(base, n);
  if (g.dimension() != n || !g.is_subspace_of(torsion_kernel(phi, tn)) || !image(phi.phi_t(), g).is_subspace_of(g) ||
      !(annihilator_of(phi, g, n) == tn))
    throw Error(ErrorCode::kNotCyclic, "subspace is not a cyclic module A/(T^" + std::to_string(n) + ")");
  const APoly fn = pow(big_f_and_f(params, base).second, n);
  const TwistedPoly act = phi_a(phi, fn);
  Subspace e = span_qk(params, g);
  Subspace back = image(act, e);
  if (!(back == g)) return false;
  return span_qk(params, back) == e;
}

bool check_line_annihilator(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x) {
  require_nonzero(x);
  DrinfeldModule phi = point_module(params, ctx, x);
  auto base = coefficient_ring(phi);
  const APoly big = big_f_and_f(params, base).first;
  const TwistedPoly big_op = phi_a(phi, big);
  const TwistedPoly one_minus_t = phi_a(phi, APoly::from_integers(base, {1, -1}));
  for (const auto& mu : ctx->subfield_elements(params.k)) {
    FieldElem mx = ctx->mul(mu, x);
    if (!evaluate(big_op, mx).is_zero()) return false;
    if (evaluate(one_minus_t, mx) != ctx->mul(ctx->frobenius(mu, params.j), x)) return false;
  }
  Subspace line = span_qk(params, ctx, std::span<const FieldElem>(&x, 1));
  APoly ann = annihilator_of(phi, line, params.k);
  return ann == monic(big);
}

}  // namespace dtower
