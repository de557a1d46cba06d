#include "dtower/towers.hpp"

#include <algorithm>
#include <numeric>

#include "dtower/parallel.hpp"
#include "towers_detail.hpp"

namespace dtower {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::F: return "F";
    case Variant::G: return "G";
    case Variant::H: return "H";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  if (s == "F") return Variant::F;
  if (s == "G") return Variant::G;
  if (s == "H") return Variant::H;
  throw Error(ErrorCode::kParse, "variant must be F, G or H, got '" + std::string(s) + "'");
}

// ---- evaluators ----

FieldElem eval_F(const TowerParams& params, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y) {
  if (x.is_zero()) throw Error(ErrorCode::kZeroDenominator, "F needs x != 0");
  FieldElem r = ctx.div(y, ctx.frobenius(x, params.k));
  FieldElem s = ctx.div(ctx.frobenius(y, params.j), x);
  return ctx.sub(ctx.add(ctx.trace_partial(r, params.j), ctx.trace_partial(s, params.k)), ctx.one());
}

FieldElem eval_G(const TowerParams& params, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y) {
  if (x.is_zero()) throw Error(ErrorCode::kZeroDenominator, "G needs X != 0");
  const unsigned q = params.q;
  FieldElem sum;
  for (unsigned i = 0; i < params.m; ++i) {
    const unsigned den_index = i < params.j ? params.k + i : i - params.j;
    FieldElem num = ctx.pow(y, q_number(q, i));
    FieldElem den = ctx.pow(x, q_number(q, den_index));
    sum = ctx.add(sum, ctx.div(num, den));
  }
  return ctx.sub(ctx.mul(y, ctx.pow(sum, q - 1)), x);
}

namespace {

struct HParts {
  FieldElem num_left, den_left, num_right, den_right;
};

HParts h_parts(const TowerParams& params, const FieldCtx& ctx, const FieldElem& u, const FieldElem& v) {
  const FieldElem a = ctx.from_int(params.a);
  const FieldElem b = ctx.from_int(params.b);
  HParts h;
  h.num_left = ctx.sub(ctx.trace_partial(v, params.j), a);
  h.den_left = ctx.sub(ctx.frobenius(ctx.trace_partial(u, params.j), params.k), a);
  h.num_right = ctx.sub(ctx.frobenius(ctx.trace_partial(v, params.k), params.j), b);
  h.den_right = ctx.sub(ctx.trace_partial(u, params.k), b);
  return h;
}

}  // namespace

FieldElem eval_H(const TowerParams& params, const FieldCtx& ctx, const FieldElem& u, const FieldElem& v) {
  HParts h = h_parts(params, ctx, u, v);
  if (h.den_left.is_zero()) throw Error(ErrorCode::kZeroDenominator, "H: tr_j(u)^{q^k} - a vanishes");
  if (h.den_right.is_zero()) throw Error(ErrorCode::kZeroDenominator, "H: tr_k(u) - b vanishes");
  return ctx.sub(ctx.div(h.num_left, h.den_left), ctx.div(h.num_right, h.den_right));
}

FieldElem eval_H_cross(const TowerParams& params, const FieldCtx& ctx, const FieldElem& u, const FieldElem& v) {
  HParts h = h_parts(params, ctx, u, v);
  return ctx.sub(ctx.mul(h.num_left, h.den_right), ctx.mul(h.num_right, h.den_left));
}

bool h_denominators_nonzero(const TowerParams& params, const FieldCtx& ctx, const FieldElem& u) {
  HParts h = h_parts(params, ctx, u, u);
  return !h.den_left.is_zero() && !h.den_right.is_zero();
}

std::vector<FieldElem> fiber_solutions(const TowerParams& params, const FieldPtr& ctx, const FieldElem& x) {
  if (x.is_zero()) throw Error(ErrorCode::kZeroPoint, "fiber over x = 0");
  return solve_affine(q_poly(params, ctx, x), x);
}

// ---- points ----

namespace detail {

bool step_holds(const TowerParams& params, const FieldCtx& ctx, Variant v, const FieldElem& prev, const FieldElem& next) {
  if (next.is_zero()) return false;
  switch (v) {
    case Variant::F: return eval_F(params, ctx, prev, next).is_zero();
    case Variant::G: return eval_G(params, ctx, prev, next).is_zero();
    case Variant::H:
      return h_denominators_nonzero(params, ctx, prev) && eval_H_cross(params, ctx, prev, next).is_zero();
  }
  return false;
}

unsigned coordinate_count(Variant v, unsigned n) {
  if (n == 0) throw Error(ErrorCode::kPrecondition, "level n must be positive");
  if (v == Variant::H) {
    if (n < 2) throw Error(ErrorCode::kPrecondition, "the H tower starts at level 2");
    return n - 1;
  }
  return n;
}

}  // namespace detail

TowerPoint TowerPoint::make(const TowerParams& params, FieldPtr ctx, Variant variant, std::vector<FieldElem> coords) {
  if (coords.empty()) throw Error(ErrorCode::kPrecondition, "a point needs at least one coordinate");
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i].is_zero()) throw Error(ErrorCode::kZeroPoint, "coordinate " + std::to_string(i + 1) + " is zero");
  for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
    if (variant == Variant::H && !h_denominators_nonzero(params, *ctx, coords[i]))
      throw Error(ErrorCode::kZeroDenominator, "H denominator vanishes at coordinate " + std::to_string(i + 1));
    if (!detail::step_holds(params, *ctx, variant, coords[i], coords[i + 1]))
      throw Error(ErrorCode::kNotOnCurve, std::string(to_string(variant)) + " recursion fails at step " + std::to_string(i + 1));
  }
  return TowerPoint(variant, std::move(ctx), std::move(coords));
}

unsigned TowerPoint::rationality_degree() const {
  const unsigned d = ctx_->d();
  for (unsigned l = 1; l <= d; ++l) {
    if (d % l != 0) continue;
    bool all = std::all_of(coords_.begin(), coords_.end(), [&](const FieldElem& c) { return ctx_->in_subfield(c, l); });
    if (all) return l;
  }
  return d;
}

std::vector<TowerPoint> enumerate_rational(const TowerParams& params, unsigned n, Variant variant, EnumOptions opts) {
  const unsigned len = detail::coordinate_count(variant, n);
  FieldPtr ctx = make_ambient(params, params.m, opts.field);
  std::vector<FieldElem> cands = ctx->subfield_elements(params.m);
  cands.erase(cands.begin());  // zero comes first

  using Tuple = std::vector<FieldElem>;
  auto per_head = parallel_map<std::vector<Tuple>>(cands.size(), [&](std::size_t h) {
    std::vector<Tuple> frontier{{cands[h]}};
    for (unsigned level = 1; level < len; ++level) {
      std::vector<Tuple> next;
      for (const auto& t : frontier)
        for (const auto& y : cands)
          if (detail::step_holds(params, *ctx, variant, t.back(), y)) {
            Tuple ext = t;
            ext.push_back(y);
            next.push_back(std::move(ext));
          }
      frontier = std::move(next);
    }
    return frontier;
  });

  std::vector<TowerPoint> out;
  for (auto& group : per_head)
    for (auto& t : group) out.push_back(TowerPoint::make(params, ctx, variant, std::move(t)));
  return out;
}

bool is_supersingular_point(const TowerParams& params, const TowerPoint& pt) {
  const FieldCtx& ctx = pt.ctx();
  const FieldElem& first = pt.coords().front();
  switch (pt.variant()) {
    case Variant::F: return ctx.qpow_ratio(first, params.m, 0) == ctx.one();
    case Variant::G: return ctx.pow(first, q_number(params.q, params.m)) == ctx.one();
    case Variant::H: {
      const FieldElem target = ctx.from_int(static_cast<long long>(params.a) + params.b);
      return std::all_of(pt.coords().begin(), pt.coords().end(),
                         [&](const FieldElem& u) { return ctx.trace_partial(u, params.m) == target; });
    }
  }
  return false;
}

std::uint64_t supersingular_formula(const TowerParams& params, unsigned n) {
  if (n == 0) throw Error(ErrorCode::kPrecondition, "level n must be positive");
  return (checked_pow(params.q, params.m) - 1) * checked_pow(params.q, (params.m - 1) * (n - 1));
}

std::pair<std::uint64_t, std::uint64_t> count_supersingular(const TowerParams& params, unsigned n, EnumOptions opts) {
  auto pts = enumerate_rational(params, n, Variant::F, opts);
  std::uint64_t c = static_cast<std::uint64_t>(
      std::count_if(pts.begin(), pts.end(), [&](const TowerPoint& p) { return is_supersingular_point(params, p); }));
  return {c, supersingular_formula(params, n)};
}

// ---- u-coordinates ----

RSU rsu(const TowerParams& params, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y) {
  if (x.is_zero()) throw Error(ErrorCode::kZeroPoint, "rsu needs x != 0");
  if (!eval_F(params, ctx, x, y).is_zero()) throw Error(ErrorCode::kNotOnCurve, "(x, y) is not on the F curve");
  RSU t;
  t.r = ctx.div(y, ctx.frobenius(x, params.k));
  t.s = ctx.div(ctx.frobenius(y, params.j), x);
  FieldElem left, right;
  for (unsigned r = 0; r < params.a; ++r) left = ctx.add(left, ctx.frobenius(t.r, static_cast<std::uint64_t>(r) * params.k));
  for (unsigned s = 0; s < params.b; ++s) right = ctx.add(right, ctx.frobenius(t.s, static_cast<std::uint64_t>(s) * params.j));
  t.u = ctx.add(left, ctx.frobenius(right, 1));
  return t;
}

bool rsu_relations_hold(const TowerParams& params, const FieldCtx& ctx, const RSU& t) {
  const FieldElem a = ctx.from_int(params.a);
  const FieldElem b = ctx.from_int(params.b);
  bool r_ok = t.r == ctx.sub(ctx.trace_partial(t.u, params.k), b);
  bool s_ok = t.s == ctx.add(ctx.neg(ctx.trace_partial(t.u, params.j)), a);
  return r_ok && s_ok;
}

std::vector<FieldElem> u_coordinates(const TowerParams& params, const TowerPoint& pt) {
  if (pt.variant() != Variant::F) throw Error(ErrorCode::kPrecondition, "u-coordinates come from F points");
  std::vector<FieldElem> us;
  for (std::size_t i = 0; i + 1 < pt.coords().size(); ++i) us.push_back(rsu(params, pt.ctx(), pt.coords()[i], pt.coords()[i + 1]).u);
  return us;
}

TowerPoint galois_action(const TowerParams& params, const FieldElem& mu, const TowerPoint& pt) {
  const FieldCtx& ctx = pt.ctx();
  if (pt.variant() != Variant::F) throw Error(ErrorCode::kPrecondition, "the action is defined on F points");
  if (mu.is_zero() || ctx.d() % params.m != 0 || !ctx.in_subfield(mu, params.m))
    throw Error(ErrorCode::kNotInSubfield, "mu must lie in F_{q^m}^*");
  std::vector<FieldElem> c(pt.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = ctx.mul(ctx.frobenius(mu, static_cast<std::uint64_t>(params.k) * i), pt.coords()[i]);
  return TowerPoint::make(params, pt.ctx_ptr(), Variant::F, std::move(c));
}

TowerPoint base_scaling(const TowerParams& params, const FieldElem& mu, const TowerPoint& pt) {
  const FieldCtx& ctx = pt.ctx();
  if (mu.is_zero() || !ctx.in_base(mu)) throw Error(ErrorCode::kNotInSubfield, "mu must lie in F_q^*");
  std::vector<FieldElem> c(pt.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.mul(mu, pt.coords()[i]);
  return TowerPoint::make(params, pt.ctx_ptr(), pt.variant(), std::move(c));
}

std::vector<std::vector<FieldElem>> ssing_u_set(const TowerParams& params, unsigned n, EnumOptions opts) {
  if (n < 2) throw Error(ErrorCode::kPrecondition, "the u-set starts at level 2");
  FieldPtr ctx = make_ambient(params, params.m, opts.field);
  const FieldElem target = ctx->from_int(static_cast<long long>(params.a) + params.b);
  std::vector<FieldElem> us;
  for (const auto& u : ctx->subfield_elements(params.m))
    if (!u.is_zero() && ctx->trace_partial(u, params.m) == target) us.push_back(u);
  const std::uint64_t total = saturating_pow(us.size(), n - 1);
  if (total > opts.field.max_elements) throw Error(ErrorCode::kSizeCapExceeded, "u-set too large to enumerate");
  std::vector<std::vector<FieldElem>> out{{}};
  for (unsigned level = 1; level < n; ++level) {
    std::vector<std::vector<FieldElem>> next;
    for (const auto& t : out)
      for (const auto& u : us) {
        auto ext = t;
        ext.push_back(u);
        next.push_back(std::move(ext));
      }
    out = std::move(next);
  }
  return out;
}

Rational ihara_bound(unsigned p, unsigned m) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (m == 0) throw Error(ErrorCode::kPrecondition, "m must be positive");
  const std::uint64_t pm = checked_pow(p, m);
  const std::uint64_t pm1 = checked_pow(p, m + 1);
  unsigned __int128 num = static_cast<unsigned __int128>(2) * (pm1 - 1) * (pm - 1);
  unsigned __int128 den = static_cast<unsigned __int128>(p + 1) * (pm - 1) + (p - 1);
  unsigned __int128 a = num, b = den;
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  num /= a;
  den /= a;
  if (num > UINT64_MAX || den > UINT64_MAX) throw Error(ErrorCode::kSizeCapExceeded, "bound does not fit 64 bits");
  return Rational{static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den)};
}

// ---- records ----

nlohmann::json params_record(const TowerParams& params) {
  return nlohmann::json{{"p", params.p}, {"e", params.e}, {"m", params.m}, {"j", params.j}};
}

nlohmann::json point_record(const TowerParams& params, const TowerPoint& pt) {
  nlohmann::json coords = nlohmann::json::array();
  for (const auto& c : pt.coords()) coords.push_back(pt.ctx().to_text(c));
  nlohmann::json prm = params_record(params);
  prm["n"] = pt.variant() == Variant::H ? pt.coords().size() + 1 : pt.coords().size();
  prm["ambient_degree"] = pt.ctx().d();
  return nlohmann::json{{"variant", std::string(to_string(pt.variant()))},
                        {"params", prm},
                        {"coords", coords},
                        {"supersingular", is_supersingular_point(params, pt)}};
}

TowerPoint read_point_record(const nlohmann::json& rec, TowerParams& params_out) {
  try {
    const auto& prm = rec.at("params");
    params_out = TowerParams::make(prm.at("p").get<unsigned>(), prm.at("e").get<unsigned>(), prm.at("m").get<unsigned>(),
                                   prm.at("j").get<unsigned>());
    unsigned d = prm.contains("ambient_degree") ? prm.at("ambient_degree").get<unsigned>() : params_out.m;
    FieldPtr ctx = make_ambient(params_out, d);
    Variant v = parse_variant(rec.at("variant").get<std::string>());
    std::vector<FieldElem> coords;
    for (const auto& c : rec.at("coords")) coords.push_back(ctx->parse(c.get<std::string>()));
    return TowerPoint::make(params_out, ctx, v, std::move(coords));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed point record: ") + e.what());
  }
}

}  // namespace dtower
