#include "dtower/drinfeld.hpp"

#include <numeric>

namespace dtower {

namespace {

void trim(std::vector<Digit>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

// ---- APoly ----

APoly::APoly(std::shared_ptr<const BaseField> base, std::vector<Digit> coeffs) : base_(std::move(base)), c_(std::move(coeffs)) {
  trim(c_);
}

APoly APoly::from_integers(std::shared_ptr<const BaseField> base, const std::vector<long long>& coeffs) {
  std::vector<Digit> c(coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = base->from_int(coeffs[i]);
  return APoly(std::move(base), std::move(c));
}

APoly APoly::constant(std::shared_ptr<const BaseField> base, Digit c) { return APoly(std::move(base), {c}); }

APoly APoly::t_power(std::shared_ptr<const BaseField> base, unsigned n) {
  std::vector<Digit> c(n + 1, 0);
  c[n] = 1;
  return APoly(std::move(base), std::move(c));
}

std::optional<std::size_t> APoly::degree() const {
  if (c_.empty()) return std::nullopt;
  return c_.size() - 1;
}

Digit APoly::value_at(Digit t) const {
  Digit v = 0;
  for (std::size_t i = c_.size(); i-- > 0;) v = base_->add(base_->mul(v, t), c_[i]);
  return v;
}

std::string APoly::to_text() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    bool unit = c_[i] == 1 && i > 0;
    if (!unit) s += std::to_string(c_[i]);
    if (i > 0) {
      if (!unit) s += "*";
      s += "T";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

APoly operator+(const APoly& a, const APoly& b) {
  const BaseField& f = a.base();
  std::vector<Digit> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
  return APoly(a.base_ptr(), std::move(c));
}

APoly operator-(const APoly& a, const APoly& b) {
  const BaseField& f = a.base();
  std::vector<Digit> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
  return APoly(a.base_ptr(), std::move(c));
}

APoly operator*(const APoly& a, const APoly& b) {
  if (a.is_zero() || b.is_zero()) return APoly(a.base_ptr());
  const BaseField& f = a.base();
  std::vector<Digit> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a.coeffs()[i], b.coeffs()[j]));
  return APoly(a.base_ptr(), std::move(c));
}

APoly monic(const APoly& a) {
  if (a.is_zero()) return a;
  const BaseField& f = a.base();
  Digit li = f.inv(a.coeffs().back());
  std::vector<Digit> c = a.coeffs();
  for (auto& x : c) x = f.mul(x, li);
  return APoly(a.base_ptr(), std::move(c));
}

APoly pow(const APoly& a, unsigned n) {
  APoly r = APoly::constant(a.base_ptr(), 1);
  for (unsigned i = 0; i < n; ++i) r = r * a;
  return r;
}

void divmod(const APoly& a, const APoly& b, APoly& quo, APoly& rem) {
  if (b.is_zero()) throw Error(ErrorCode::kDivisionByZero, "division by the zero polynomial");
  const BaseField& f = a.base();
  std::vector<Digit> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  Digit li = f.inv(bc.back());
  std::vector<Digit> qc(r.size() >= bc.size() ? r.size() - db : 0, 0);
  for (std::size_t i = r.size(); i-- > db;) {
    Digit t = f.mul(r[i], li);
    if (t == 0) continue;
    qc[i - db] = t;
    for (std::size_t k = 0; k <= db; ++k) r[i - db + k] = f.sub(r[i - db + k], f.mul(t, bc[k]));
  }
  quo = APoly(a.base_ptr(), std::move(qc));
  rem = APoly(a.base_ptr(), std::move(r));
}

APoly gcd(const APoly& a, const APoly& b) {
  APoly x = a, y = b;
  while (!y.is_zero()) {
    APoly q(a.base_ptr()), r(a.base_ptr());
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return monic(x);
}

APoly lcm(const APoly& a, const APoly& b) {
  if (a.is_zero() || b.is_zero()) return APoly(a.base_ptr());
  APoly q(a.base_ptr()), r(a.base_ptr());
  divmod(a * b, gcd(a, b), q, r);
  return monic(q);
}

// ---- DrinfeldModule ----

DrinfeldModule DrinfeldModule::make(FieldPtr ctx, unsigned m, unsigned j, const FieldElem& g) {
  if (m < 2 || j < 1 || j >= m)
    throw Error(ErrorCode::kBadRankPair, "need 2 <= m and 1 <= j < m, got m=" + std::to_string(m) + " j=" + std::to_string(j));
  if (std::gcd(j, m - j) != 1)
    throw Error(ErrorCode::kBadRankPair, "gcd(j, m - j) must be 1, got m=" + std::to_string(m) + " j=" + std::to_string(j));
  return DrinfeldModule(std::move(ctx), m, j, g);
}

TwistedPoly DrinfeldModule::phi_t() const {
  std::vector<FieldElem> c(m_ + 1);
  c[0] = ctx_->one();
  c[j_] = g_;
  c[m_] = ctx_->neg(ctx_->one());
  return TwistedPoly(ctx_, std::move(c));
}

std::shared_ptr<const BaseField> coefficient_ring(const DrinfeldModule& phi) { return phi.ctx().base_ptr(); }

TwistedPoly phi_a(const DrinfeldModule& phi, const APoly& a) {
  const FieldPtr& ctx = phi.ctx_ptr();
  TwistedPoly result(ctx);
  if (a.is_zero()) return result;
  const TwistedPoly t = phi.phi_t();
  for (std::size_t i = a.coeffs().size(); i-- > 0;)
    result = result * t + TwistedPoly::constant(ctx, ctx->from_base(a.coeffs()[i]));
  return result;
}

std::uint64_t q_number(unsigned q, unsigned l) { return (checked_pow(q, l) - 1) / (q - 1); }

FieldElem j_invariant(const DrinfeldModule& phi) {
  return phi.ctx().pow(phi.g(), q_number(phi.ctx().q(), phi.m()));
}

bool is_supersingular(const DrinfeldModule& phi) { return phi.g().is_zero(); }

std::optional<FieldElem> find_isomorphism(const DrinfeldModule& phi, const DrinfeldModule& psi) {
  if (!phi.ctx().same_field(psi.ctx())) throw Error(ErrorCode::kContextMismatch, "modules over different ambients");
  if (phi.m() != psi.m() || phi.j() != psi.j())
    throw Error(ErrorCode::kPrecondition, "modules must share rank and twist index");
  const FieldCtx& k = phi.ctx();
  if (k.d() % phi.m() != 0)
    throw Error(ErrorCode::kAmbientTooSmall, "ambient degree " + std::to_string(k.d()) + " not divisible by m");
  for (const auto& lam : k.subfield_elements(phi.m())) {
    if (lam.is_zero()) continue;
    if (k.mul(psi.g(), k.qpow_ratio(lam, phi.j(), 0)) == phi.g()) return lam;
  }
  return std::nullopt;
}

DrinfeldModule module_from_point(FieldPtr ctx, unsigned m, unsigned j, const FieldElem& x) {
  if (x.is_zero()) throw Error(ErrorCode::kZeroPoint, "the attached module needs x != 0");
  FieldElem g = ctx->sub(ctx->qpow_ratio(x, m, j), ctx->qpow_ratio(x, 0, j));
  return DrinfeldModule::make(std::move(ctx), m, j, g);
}

Subspace torsion_kernel(const DrinfeldModule& phi, const APoly& a) { return kernel(phi_a(phi, a)); }

APoly annihilator_order(const DrinfeldModule& phi, const FieldElem& mu, unsigned bound) {
  const FieldCtx& k = phi.ctx();
  auto base = coefficient_ring(phi);
  if (mu.is_zero()) return APoly::constant(base, 1);
  const TwistedPoly t = phi.phi_t();
  // Krylov sequence mu, T mu, T^2 mu, ...; the first dependency gives the
  // minimal polynomial.
  std::vector<FieldElem> krylov{mu};
  for (unsigned deg = 1; deg <= bound; ++deg) {
    FieldElem next = evaluate(t, krylov.back());
    FqMatrix m(k.d(), krylov.size());
    for (std::size_t c = 0; c < krylov.size(); ++c)
      for (unsigned r = 0; r < k.d(); ++r) m(r, c) = krylov[c][r];
    std::vector<Digit> rhs(k.d()), sol;
    for (unsigned r = 0; r < k.d(); ++r) rhs[r] = next[r];
    if (solve_particular(k.base(), m, rhs, sol)) {
      std::vector<Digit> c(deg + 1);
      for (unsigned i = 0; i < deg; ++i) c[i] = k.base().neg(sol[i]);
      c[deg] = 1;
      return APoly(base, std::move(c));
    }
    krylov.push_back(next);
  }
  throw Error(ErrorCode::kNotFoundWithinBound, "annihilator degree exceeds " + std::to_string(bound));
}

APoly annihilator_of(const DrinfeldModule& phi, const Subspace& s, unsigned bound) {
  APoly acc = APoly::constant(coefficient_ring(phi), 1);
  for (const auto& b : s.basis()) acc = lcm(acc, annihilator_order(phi, b, bound));
  if (acc.degree().value_or(0) > bound)
    throw Error(ErrorCode::kNotFoundWithinBound, "annihilator degree exceeds " + std::to_string(bound));
  return acc;
}

Subspace cyclic_module(const DrinfeldModule& phi, const FieldElem& mu) {
  const TwistedPoly t = phi.phi_t();
  std::vector<FieldElem> gens;
  Subspace s = Subspace::zero(phi.ctx_ptr());
  FieldElem v = mu;
  while (!s.contains(v)) {
    gens.push_back(v);
    s = Subspace::span(phi.ctx_ptr(), gens);
    v = evaluate(t, v);
  }
  return s;
}

nlohmann::json to_json(const DrinfeldModule& phi) {
  const FieldCtx& k = phi.ctx();
  return nlohmann::json{{"p", k.p()},
                        {"e", k.e()},
                        {"m", phi.m()},
                        {"j", phi.j()},
                        {"g_j", k.to_text(phi.g())},
                        {"J", k.to_text(j_invariant(phi))},
                        {"supersingular", is_supersingular(phi)}};
}

}  // namespace dtower
