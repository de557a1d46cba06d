#include "dtower/ore.hpp"

#include <algorithm>
#include <cctype>

namespace dtower {

namespace {

void require_same(const FieldCtx& a, const FieldCtx& b) {
  if (!a.same_field(b)) throw Error(ErrorCode::kContextMismatch, "operands live in different fields");
}

void trim(std::vector<FieldElem>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace

// ---- Subspace ----

Subspace Subspace::zero(FieldPtr ctx) { return Subspace(std::move(ctx)); }

Subspace Subspace::span(FieldPtr ctx, std::span<const FieldElem> gens) {
  const unsigned d = ctx->d();
  FqMatrix m(gens.size(), d);
  for (std::size_t r = 0; r < gens.size(); ++r)
    for (unsigned c = 0; c < d; ++c) m(r, c) = gens[r][c];
  auto piv = rref(ctx->base(), m);
  Subspace s(std::move(ctx));
  s.basis_.resize(piv.size());
  for (std::size_t r = 0; r < piv.size(); ++r) {
    for (unsigned c = 0; c < d; ++c) s.basis_[r][c] = m(r, c);
    s.pivots_.push_back(static_cast<unsigned>(piv[r]));
  }
  return s;
}

std::uint64_t Subspace::cardinality() const {
  return saturating_pow(ctx_->q(), static_cast<unsigned>(basis_.size()));
}

bool Subspace::contains(const FieldElem& v) const {
  FieldElem r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Digit t = r[pivots_[i]];
    if (t != 0) r = ctx_->sub(r, ctx_->scale(t, basis_[i]));
  }
  return r.is_zero();
}

bool Subspace::is_subspace_of(const Subspace& o) const {
  require_same(*ctx_, *o.ctx_);
  for (const auto& b : basis_)
    if (!o.contains(b)) return false;
  return true;
}

Subspace Subspace::join(const Subspace& o) const {
  require_same(*ctx_, *o.ctx_);
  std::vector<FieldElem> gens = basis_;
  gens.insert(gens.end(), o.basis_.begin(), o.basis_.end());
  return span(ctx_, gens);
}

std::vector<FieldElem> Subspace::elements() const { return span_elements(*ctx_, basis_); }

bool Subspace::operator==(const Subspace& o) const {
  return ctx_->same_field(*o.ctx_) && basis_ == o.basis_;
}

// ---- TwistedPoly ----

TwistedPoly::TwistedPoly(FieldPtr ctx, std::vector<FieldElem> coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

TwistedPoly TwistedPoly::constant(FieldPtr ctx, const FieldElem& c) { return TwistedPoly(std::move(ctx), {c}); }

TwistedPoly TwistedPoly::monomial(FieldPtr ctx, std::size_t i, const FieldElem& c) {
  std::vector<FieldElem> v(i + 1);
  v[i] = c;
  return TwistedPoly(std::move(ctx), std::move(v));
}

std::optional<std::size_t> TwistedPoly::tau_degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

bool TwistedPoly::operator==(const TwistedPoly& o) const {
  return ctx_->same_field(*o.ctx_) && coeffs_ == o.coeffs_;
}

TwistedPoly operator+(const TwistedPoly& f, const TwistedPoly& g) {
  require_same(f.ctx(), g.ctx());
  const FieldCtx& k = f.ctx();
  std::vector<FieldElem> c(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k.add(f.coeff(i), g.coeff(i));
  return TwistedPoly(f.ctx_ptr(), std::move(c));
}

TwistedPoly operator-(const TwistedPoly& f, const TwistedPoly& g) {
  require_same(f.ctx(), g.ctx());
  const FieldCtx& k = f.ctx();
  std::vector<FieldElem> c(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = k.sub(f.coeff(i), g.coeff(i));
  return TwistedPoly(f.ctx_ptr(), std::move(c));
}

TwistedPoly operator-(const TwistedPoly& f) {
  std::vector<FieldElem> c = f.coeffs();
  for (auto& x : c) x = f.ctx().neg(x);
  return TwistedPoly(f.ctx_ptr(), std::move(c));
}

TwistedPoly operator*(const TwistedPoly& f, const TwistedPoly& g) {
  require_same(f.ctx(), g.ctx());
  if (f.is_zero() || g.is_zero()) return TwistedPoly(f.ctx_ptr());
  const FieldCtx& k = f.ctx();
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<FieldElem> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      c[i + j] = k.add(c[i + j], k.mul(a[i], k.frobenius(b[j], i)));
    }
  }
  return TwistedPoly(f.ctx_ptr(), std::move(c));
}

TwistedPoly scale(const FieldElem& c, const TwistedPoly& f) {
  std::vector<FieldElem> v = f.coeffs();
  for (auto& x : v) x = f.ctx().mul(c, x);
  return TwistedPoly(f.ctx_ptr(), std::move(v));
}

FieldElem evaluate(const TwistedPoly& f, const FieldElem& mu) {
  const FieldCtx& k = f.ctx();
  FieldElem s;
  if (mu.is_zero()) return s;
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) s = k.add(s, k.mul(c[i], k.frobenius(mu, i)));
  return s;
}

FieldElem point_derivation(const TwistedPoly& f) { return f.coeff(0); }

FqMatrix linear_matrix(const TwistedPoly& f) {
  const FieldCtx& k = f.ctx();
  const unsigned d = k.d();
  FqMatrix m(d, d);
  for (unsigned c = 0; c < d; ++c) {
    FieldElem v = evaluate(f, k.basis_element(c));
    for (unsigned r = 0; r < d; ++r) m(r, c) = v[r];
  }
  return m;
}

Subspace kernel(const TwistedPoly& f) {
  const FieldCtx& k = f.ctx();
  auto null = nullspace(k.base(), linear_matrix(f));
  std::vector<FieldElem> gens(null.size());
  for (std::size_t i = 0; i < null.size(); ++i)
    for (unsigned c = 0; c < k.d(); ++c) gens[i][c] = null[i][c];
  return Subspace::span(f.ctx_ptr(), gens);
}

std::vector<FieldElem> solve_affine(const TwistedPoly& f, const FieldElem& c) {
  const FieldCtx& k = f.ctx();
  std::vector<Digit> rhs(k.d()), sol;
  for (unsigned i = 0; i < k.d(); ++i) rhs[i] = c[i];
  if (!solve_particular(k.base(), linear_matrix(f), rhs, sol)) return {};
  FieldElem part;
  for (unsigned i = 0; i < k.d(); ++i) part[i] = sol[i];
  auto ker = kernel(f).elements();
  for (auto& v : ker) v = k.add(v, part);
  std::sort(ker.begin(), ker.end());
  return ker;
}

Subspace image(const TwistedPoly& f, const Subspace& s) {
  require_same(f.ctx(), s.ctx());
  std::vector<FieldElem> gens;
  gens.reserve(s.dimension());
  for (const auto& b : s.basis()) gens.push_back(evaluate(f, b));
  return Subspace::span(f.ctx_ptr(), gens);
}

TwistedPoly rebase(const TwistedPoly& f, FieldPtr target) {
  if (target->p() != f.ctx().p() || target->e() != f.ctx().e())
    throw Error(ErrorCode::kContextMismatch, "target ambient has a different base field");
  std::vector<FieldElem> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!f.ctx().in_base(f.coeffs()[i]))
      throw Error(ErrorCode::kPrecondition, "coefficient outside F_q cannot move between ambients");
    c[i] = target->from_base(f.coeffs()[i][0]);
  }
  return TwistedPoly(std::move(target), std::move(c));
}

unsigned splitting_degree(const TwistedPoly& f, std::size_t target_dim, unsigned max_d) {
  if (f.coeff(0).is_zero()) throw Error(ErrorCode::kPrecondition, "splitting search needs a nonzero constant term");
  const FieldCtx& k = f.ctx();
  for (unsigned dd = k.d(); dd <= max_d && dd <= kMaxExtDegree; dd += k.d()) {
    FieldPtr amb;
    try {
      amb = make_field(k.p(), k.e(), dd, k.options());
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kSizeCapExceeded) break;
      throw;
    }
    if (kernel(rebase(f, amb)).dimension() == target_dim) return dd;
  }
  throw Error(ErrorCode::kNoSplittingFound,
              "kernel never reaches dimension " + std::to_string(target_dim) + " up to degree " + std::to_string(max_d));
}

std::string to_text(const TwistedPoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  const auto& c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += f.ctx().to_text(c[i]);
    if (i == 1) s += "*t";
    if (i > 1) s += "*t^" + std::to_string(i);
  }
  return s;
}

TwistedPoly parse_twisted(FieldPtr ctx, std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "0") return TwistedPoly(ctx);
  if (t.empty()) throw Error(ErrorCode::kParse, "empty twisted polynomial");
  std::vector<FieldElem> coeffs;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t close = t.find(']', pos);
    if (t[pos] != '[' || close == std::string::npos) throw Error(ErrorCode::kParse, "term must start with an element");
    FieldElem c = ctx->parse(t.substr(pos, close + 1 - pos));
    pos = close + 1;
    std::size_t power = 0;
    if (t.compare(pos, 2, "*t") == 0) {
      pos += 2;
      power = 1;
      if (pos < t.size() && t[pos] == '^') {
        std::size_t end = ++pos;
        while (end < t.size() && std::isdigit(static_cast<unsigned char>(t[end]))) ++end;
        if (end == pos) throw Error(ErrorCode::kParse, "missing exponent after t^");
        power = std::stoul(t.substr(pos, end - pos));
        pos = end;
      }
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1);
    coeffs[power] = ctx->add(coeffs[power], c);
    if (pos < t.size()) {
      if (t[pos] != '+') throw Error(ErrorCode::kParse, "expected '+' between terms");
      if (++pos == t.size()) throw Error(ErrorCode::kParse, "dangling '+'");
    }
  }
  return TwistedPoly(std::move(ctx), std::move(coeffs));
}

}  // namespace dtower
