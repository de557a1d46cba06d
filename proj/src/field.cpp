#include "dtower/field.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "dtower/linalg.hpp"
#include "poly_fq.hpp"

namespace dtower {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kSizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::kNoIrreducibleFound: return "NoIrreducibleFound";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kDegreeNotDividing: return "DegreeNotDividing";
    case ErrorCode::kContextMismatch: return "ContextMismatch";
    case ErrorCode::kNoSplittingFound: return "NoSplittingFound";
    case ErrorCode::kBadRankPair: return "BadRankPair";
    case ErrorCode::kAmbientTooSmall: return "AmbientTooSmall";
    case ErrorCode::kZeroPoint: return "ZeroPoint";
    case ErrorCode::kNotFoundWithinBound: return "NotFoundWithinBound";
    case ErrorCode::kCharacteristicDividesK: return "CharacteristicDividesK";
    case ErrorCode::kBracketMismatch: return "BracketMismatch";
    case ErrorCode::kNoMarkedPreimage: return "NoMarkedPreimage";
    case ErrorCode::kNotCyclic: return "NotCyclic";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kNotOnCurve: return "NotOnCurve";
    case ErrorCode::kNotInSubfield: return "NotInSubfield";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kPrecondition: return "Precondition";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::uint64_t checked_pow(std::uint64_t x, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (x != 0 && r > std::numeric_limits<std::uint64_t>::max() / x)
      throw Error(ErrorCode::kSizeCapExceeded, "integer power overflows 64 bits");
    r *= x;
  }
  return r;
}

std::uint64_t saturating_pow(std::uint64_t x, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (x != 0 && r > std::numeric_limits<std::uint64_t>::max() / x)
      return std::numeric_limits<std::uint64_t>::max();
    r *= x;
  }
  return r;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    out.push_back(f);
    while (n % f == 0) n /= f;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Digit-vector product modulo a monic h over Z/p.
std::vector<unsigned> mulmod_fp(unsigned p, const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                const std::vector<unsigned>& h) {
  const std::size_t e = h.size() - 1;
  std::vector<unsigned> t(2 * e, 0);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
  for (std::size_t i = t.size(); i-- > e;) {
    unsigned c = t[i];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= e; ++k) t[i - e + k] = (t[i - e + k] + (p - c) * h[k]) % p;
  }
  t.resize(e);
  return t;
}

}  // namespace

BaseField::BaseField(unsigned p, std::vector<unsigned> modulus)
    : p_(p), e_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  q_ = static_cast<unsigned>(checked_pow(p_, e_));
  if (q_ > kMaxBaseOrder) throw Error(ErrorCode::kSizeCapExceeded, "base field order above table limit");

  auto to_vec = [&](unsigned a) {
    std::vector<unsigned> v(e_);
    for (unsigned i = 0; i < e_; ++i, a /= p_) v[i] = a % p_;
    return v;
  };
  auto to_idx = [&](const std::vector<unsigned>& v) {
    unsigned a = 0;
    for (unsigned i = e_; i-- > 0;) a = a * p_ + v[i];
    return a;
  };

  add_.resize(q_ * q_);
  neg_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    auto va = to_vec(a);
    std::vector<unsigned> vn(e_);
    for (unsigned i = 0; i < e_; ++i) vn[i] = (p_ - va[i]) % p_;
    neg_[a] = static_cast<Digit>(to_idx(vn));
    for (unsigned b = 0; b < q_; ++b) {
      auto vb = to_vec(b);
      std::vector<unsigned> vs(e_);
      for (unsigned i = 0; i < e_; ++i) vs[i] = (va[i] + vb[i]) % p_;
      add_[a * q_ + b] = static_cast<Digit>(to_idx(vs));
    }
  }

  // exp/log tables from the least generator of F_q^*.
  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  if (q_ == 2) {
    exp_[0] = 1;
    return;
  }
  for (unsigned g = 2; g < q_; ++g) {
    auto vg = to_vec(g);
    std::vector<Digit> seq;
    std::vector<unsigned> cur = to_vec(1);
    bool ok = true;
    for (unsigned i = 0; i < q_ - 1; ++i) {
      unsigned idx = to_idx(cur);
      if (i > 0 && idx == 1) {
        ok = false;
        break;
      }
      seq.push_back(static_cast<Digit>(idx));
      cur = mulmod_fp(p_, cur, vg, modulus_);
    }
    if (!ok) continue;
    for (unsigned i = 0; i < q_ - 1; ++i) {
      exp_[i] = seq[i];
      log_[seq[i]] = static_cast<Digit>(i);
    }
    return;
  }
  throw Error(ErrorCode::kPrecondition, "base modulus is not irreducible");
}

Digit BaseField::inv(Digit a) const {
  if (a == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero in F_q");
  unsigned l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Digit BaseField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Digit>(r);
}

std::vector<unsigned> BaseField::digits(Digit a) const {
  std::vector<unsigned> v(e_);
  unsigned x = a;
  for (unsigned i = 0; i < e_; ++i, x /= p_) v[i] = x % p_;
  return v;
}

FieldPtr FieldCtx::make(unsigned p, unsigned e, unsigned d, FieldOptions opts) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (e == 0 || d == 0) throw Error(ErrorCode::kPrecondition, "extension degrees must be positive");
  if (d > kMaxExtDegree) throw Error(ErrorCode::kSizeCapExceeded, "extension degree above " + std::to_string(kMaxExtDegree));
  const std::uint64_t q = saturating_pow(p, e);
  if (q > kMaxBaseOrder) throw Error(ErrorCode::kSizeCapExceeded, "q = p^e above " + std::to_string(kMaxBaseOrder));
  const std::uint64_t size = saturating_pow(q, d);
  if (size > opts.max_elements)
    throw Error(ErrorCode::kSizeCapExceeded, "q^d exceeds the configured cap of " + std::to_string(opts.max_elements));

  std::vector<unsigned> h{0, 1};
  if (e > 1) {
    BaseField prime(p, {0, 1});
    auto poly = detail::least_irreducible(prime, e);
    h.assign(poly.begin(), poly.end());
  }

  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  ctx->base_ = std::make_shared<const BaseField>(p, std::move(h));
  ctx->d_ = d;
  ctx->size_ = size;
  ctx->opts_ = opts;
  if (d == 1)
    ctx->ext_modulus_ = {0, 1};
  else
    ctx->ext_modulus_ = detail::least_irreducible(*ctx->base_, d);

  const BaseField& f = *ctx->base_;
  ctx->neg_tail_.resize(d);
  for (unsigned i = 0; i < d; ++i) ctx->neg_tail_[i] = f.neg(ctx->ext_modulus_[i]);

  // Frobenius powers as matrices: column c of frob_[i] is (y^c)^{q^i}.
  ctx->frob_.assign(d, std::vector<Digit>(d * d, 0));
  for (unsigned i = 0; i < d; ++i) ctx->frob_[0][i * d + i] = 1;
  if (d > 1) {
    std::vector<Digit>& m1 = ctx->frob_[1];
    for (unsigned c = 0; c < d; ++c) {
      FieldElem col = ctx->pow(ctx->basis_element(c), f.q());
      for (unsigned r = 0; r < d; ++r) m1[r * d + c] = col[r];
    }
    for (unsigned i = 2; i < d; ++i) {
      for (unsigned c = 0; c < d; ++c) {
        FieldElem prev;
        for (unsigned r = 0; r < d; ++r) prev[r] = ctx->frob_[i - 1][r * d + c];
        FieldElem next = ctx->apply_matrix(m1, prev);
        for (unsigned r = 0; r < d; ++r) ctx->frob_[i][r * d + c] = next[r];
      }
    }
  }
  return ctx;
}

FieldElem FieldCtx::basis_element(unsigned i) const {
  FieldElem r;
  if (i >= d_) throw Error(ErrorCode::kPrecondition, "basis index out of range");
  r[i] = 1;
  return r;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  for (unsigned i = 0; i < d_; ++i) r[i] = base_->add(a[i], b[i]);
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r;
  for (unsigned i = 0; i < d_; ++i) r[i] = base_->sub(a[i], b[i]);
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  FieldElem r;
  for (unsigned i = 0; i < d_; ++i) r[i] = base_->neg(a[i]);
  return r;
}

FieldElem FieldCtx::scale(Digit c, const FieldElem& a) const {
  FieldElem r;
  if (c == 0) return r;
  for (unsigned i = 0; i < d_; ++i) r[i] = base_->mul(c, a[i]);
  return r;
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  const BaseField& f = *base_;
  std::array<Digit, 2 * kMaxExtDegree> t{};
  for (unsigned i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < d_; ++j)
      if (b[j] != 0) t[i + j] = f.add(t[i + j], f.mul(a[i], b[j]));
  }
  for (unsigned i = 2 * d_ - 1; i-- > d_;) {
    Digit c = t[i];
    if (c == 0) continue;
    t[i] = 0;
    for (unsigned k = 0; k < d_; ++k) t[i - d_ + k] = f.add(t[i - d_ + k], f.mul(c, neg_tail_[k]));
  }
  FieldElem r;
  for (unsigned i = 0; i < d_; ++i) r[i] = t[i];
  return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (a.is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  const BaseField& f = *base_;
  using detail::Poly;
  Poly r0(ext_modulus_.begin(), ext_modulus_.end());
  Poly r1(d_);
  for (unsigned i = 0; i < d_; ++i) r1[i] = a[i];
  detail::trim(r1);
  Poly s0{}, s1{1};
  while (detail::degree(r1) > 0) {
    Poly quo, rem;
    detail::divmod(f, r0, r1, quo, rem);
    Poly s2 = detail::sub(f, s0, detail::mul(f, quo, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (detail::degree(r1) != 0) throw Error(ErrorCode::kPrecondition, "extension modulus is not irreducible");
  Digit ci = f.inv(r1[0]);
  FieldElem out;
  for (std::size_t i = 0; i < s1.size() && i < d_; ++i) out[i] = f.mul(s1[i], ci);
  return out;
}

FieldElem FieldCtx::pow(const FieldElem& a, std::uint64_t n) const {
  FieldElem result = one();
  FieldElem base = a;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

FieldElem FieldCtx::apply_matrix(const std::vector<Digit>& m, const FieldElem& a) const {
  const BaseField& f = *base_;
  FieldElem r;
  for (unsigned c = 0; c < d_; ++c) {
    Digit x = a[c];
    if (x == 0) continue;
    const Digit* col = m.data() + c;
    for (unsigned row = 0; row < d_; ++row) {
      Digit v = col[row * d_];
      if (v != 0) r[row] = f.add(r[row], f.mul(v, x));
    }
  }
  return r;
}

FieldElem FieldCtx::frobenius(const FieldElem& a, std::uint64_t i) const {
  i %= d_;
  if (i == 0) return a;
  return apply_matrix(frob_[i], a);
}

FieldElem FieldCtx::trace_partial(const FieldElem& a, std::uint64_t l) const {
  FieldElem s;
  for (std::uint64_t i = 0; i < l; ++i) s = add(s, frobenius(a, i));
  return s;
}

FieldElem FieldCtx::qpow_ratio(const FieldElem& a, std::uint64_t i, std::uint64_t j) const {
  if (i == j) return one();
  if (a.is_zero()) throw Error(ErrorCode::kDivisionByZero, "q-power ratio of zero");
  if (i % d_ == j % d_) return one();
  return mul(frobenius(a, i), inv(frobenius(a, j)));
}

bool FieldCtx::in_subfield(const FieldElem& a, unsigned m) const {
  if (m == 0 || d_ % m != 0)
    throw Error(ErrorCode::kDegreeNotDividing, std::to_string(m) + " does not divide " + std::to_string(d_));
  return frobenius(a, m) == a;
}

bool FieldCtx::in_base(const FieldElem& a) const {
  for (unsigned i = 1; i < d_; ++i)
    if (a[i] != 0) return false;
  return true;
}

std::vector<FieldElem> FieldCtx::subfield_basis(unsigned m) const {
  if (m == 0 || d_ % m != 0)
    throw Error(ErrorCode::kDegreeNotDividing, std::to_string(m) + " does not divide " + std::to_string(d_));
  FqMatrix a(d_, d_);
  const auto& fm = frob_[m % d_];
  for (unsigned r = 0; r < d_; ++r)
    for (unsigned c = 0; c < d_; ++c) a(r, c) = base_->sub(fm[r * d_ + c], r == c ? 1 : 0);
  auto null = nullspace(*base_, a);
  FqMatrix rows(null.size(), d_);
  for (std::size_t r = 0; r < null.size(); ++r)
    for (unsigned c = 0; c < d_; ++c) rows(r, c) = null[r][c];
  auto piv = rref(*base_, rows);
  std::vector<FieldElem> basis(piv.size());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (unsigned c = 0; c < d_; ++c) basis[r][c] = rows(r, c);
  return basis;
}

std::vector<FieldElem> FieldCtx::subfield_elements(unsigned m) const {
  if (m == 0 || d_ % m != 0)
    throw Error(ErrorCode::kDegreeNotDividing, std::to_string(m) + " does not divide " + std::to_string(d_));
  if (saturating_pow(q(), m) > opts_.max_elements)
    throw Error(ErrorCode::kSizeCapExceeded, "subfield too large to enumerate");
  auto basis = subfield_basis(m);
  return span_elements(*this, basis);
}

std::vector<FieldElem> span_elements(const FieldCtx& ctx, std::span<const FieldElem> basis) {
  const std::uint64_t count = saturating_pow(ctx.q(), static_cast<unsigned>(basis.size()));
  if (count > ctx.options().max_elements)
    throw Error(ErrorCode::kSizeCapExceeded, "span too large to enumerate");
  std::vector<FieldElem> out;
  out.reserve(count);
  out.push_back(ctx.zero());
  // Build level by level: out holds the span of the first t basis vectors.
  for (const FieldElem& b : basis) {
    const std::size_t prev = out.size();
    for (unsigned c = 1; c < ctx.q(); ++c) {
      FieldElem cb = ctx.scale(static_cast<Digit>(c), b);
      for (std::size_t i = 0; i < prev; ++i) out.push_back(ctx.add(out[i], cb));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t FieldCtx::multiplicative_order(const FieldElem& a) const {
  if (a.is_zero()) throw Error(ErrorCode::kDivisionByZero, "order of zero");
  if (size_ == std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::kSizeCapExceeded, "field too large for order computation");
  std::uint64_t order = size_ - 1;
  for (auto r : prime_factors(size_ - 1))
    while (order % r == 0 && pow(a, order / r) == one()) order /= r;
  return order;
}

FieldElem FieldCtx::primitive_element() const {
  if (size_ > opts_.max_elements) throw Error(ErrorCode::kSizeCapExceeded, "field too large to search");
  const std::uint64_t n = size_ - 1;
  auto factors = prime_factors(n);
  for (std::uint64_t i = 1; i < size_; ++i) {
    FieldElem x = from_index(i);
    bool ok = true;
    for (auto r : factors)
      if (pow(x, n / r) == one()) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  throw Error(ErrorCode::kPrecondition, "no primitive element found");
}

std::uint64_t FieldCtx::index(const FieldElem& a) const {
  if (size_ >= (std::uint64_t{1} << 63)) throw Error(ErrorCode::kSizeCapExceeded, "field too large to index");
  std::uint64_t n = 0;
  for (unsigned i = d_; i-- > 0;) n = n * q() + a[i];
  return n;
}

FieldElem FieldCtx::from_index(std::uint64_t n) const {
  FieldElem r;
  for (unsigned i = 0; i < d_; ++i, n /= q()) r[i] = static_cast<Digit>(n % q());
  return r;
}

FieldElem FieldCtx::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<unsigned> dist(0, q() - 1);
  FieldElem r;
  for (unsigned i = 0; i < d_; ++i) r[i] = static_cast<Digit>(dist(rng));
  return r;
}

std::string FieldCtx::to_text(const FieldElem& a) const {
  std::string s = "[";
  for (unsigned i = 0; i < d_; ++i) {
    auto digits = base_->digits(a[i]);
    for (unsigned l = 0; l < digits.size(); ++l) {
      if (i + l > 0) s += ',';
      s += std::to_string(digits[l]);
    }
  }
  s += ']';
  return s;
}

FieldElem FieldCtx::parse(std::string_view text) const {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw Error(ErrorCode::kParse, "element must look like [d0,d1,...]");
  std::vector<unsigned> digits;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw Error(ErrorCode::kParse, "empty digit in element text");
    for (char c : cur)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(ErrorCode::kParse, "bad digit '" + cur + "'");
    unsigned long v = std::stoul(cur);
    if (v >= p()) throw Error(ErrorCode::kParse, "digit " + cur + " not below p");
    digits.push_back(static_cast<unsigned>(v));
    cur.clear();
  };
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] == ',')
      flush();
    else
      cur += t[i];
  }
  flush();
  if (digits.size() != static_cast<std::size_t>(d_) * e())
    throw Error(ErrorCode::kParse, "expected " + std::to_string(d_ * e()) + " digits");
  FieldElem r;
  for (unsigned i = 0; i < d_; ++i) {
    unsigned v = 0;
    for (unsigned l = e(); l-- > 0;) v = v * p() + digits[i * e() + l];
    r[i] = static_cast<Digit>(v);
  }
  return r;
}

}  // namespace dtower
