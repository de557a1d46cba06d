#include <gtest/gtest.h>

#include <ostream>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "dtower/parallel.hpp"
#include "dtower/towers.hpp"
#include "oracles.hpp"

using namespace dtower;

namespace {

FieldElem inv(const FieldCtx& ctx, const FieldElem& x) { return oracle::pow(ctx, x, ctx.size() - 2); }

FieldElem tr(const FieldCtx& ctx, const FieldElem& x, unsigned l) {
  FieldElem s;
  for (unsigned i = 0; i < l; ++i) s = oracle::add(ctx, s, oracle::frob(ctx, x, i));
  return s;
}

FieldElem f_oracle(const TowerParams& t, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y) {
  FieldElem r = oracle::mul(ctx, y, inv(ctx, oracle::frob(ctx, x, t.k)));
  FieldElem s = oracle::mul(ctx, oracle::frob(ctx, y, t.j), inv(ctx, x));
  return ctx.sub(oracle::add(ctx, tr(ctx, r, t.j), tr(ctx, s, t.k)), ctx.one());
}

std::uint64_t nq(unsigned q, unsigned i) { return (checked_pow(q, i) - 1) / (q - 1); }

FieldElem g_oracle(const TowerParams& t, const FieldCtx& ctx, const FieldElem& x, const FieldElem& y) {
  FieldElem sum;
  for (unsigned i = 0; i < t.m; ++i) {
    unsigned di = i < t.j ? t.k + i : i - t.j;
    sum = oracle::add(ctx, sum, oracle::mul(ctx, oracle::pow(ctx, y, nq(t.q, i)), inv(ctx, oracle::pow(ctx, x, nq(t.q, di)))));
  }
  return ctx.sub(oracle::mul(ctx, y, oracle::pow(ctx, sum, t.q - 1)), x);
}

/// Level-n rational F points by nested brute force.
std::vector<std::vector<FieldElem>> brute_points(const TowerParams& t, const FieldCtx& ctx, unsigned n) {
  std::vector<FieldElem> units;
  for (const auto& x : ctx.subfield_elements(t.m))
    if (!x.is_zero()) units.push_back(x);
  std::vector<std::vector<FieldElem>> cur;
  for (const auto& x : units) cur.push_back({x});
  for (unsigned l = 1; l < n; ++l) {
    std::vector<std::vector<FieldElem>> next;
    for (const auto& pt : cur)
      for (const auto& y : units)
        if (f_oracle(t, ctx, pt.back(), y).is_zero()) {
          auto e = pt;
          e.push_back(y);
          next.push_back(e);
        }
    cur = next;
  }
  return cur;
}

std::vector<std::vector<FieldElem>> coords_of(const std::vector<TowerPoint>& pts) {
  std::vector<std::vector<FieldElem>> out;
  for (const auto& p : pts) out.push_back(p.coords());
  return out;
}

struct P4 {
  unsigned p, e, m, j;
};

void PrintTo(const P4& c, std::ostream* os) { *os << "p" << c.p << "e" << c.e << "m" << c.m << "j" << c.j; }

class TowerCases : public testing::TestWithParam<P4> {
 protected:
  TowerParams t = TowerParams::make(GetParam().p, GetParam().e, GetParam().m, GetParam().j);
  FieldPtr ctx = make_ambient(t, t.m);
};

std::string p4_name(const testing::TestParamInfo<P4>& info) {
  const auto& g = info.param;
  return "p" + std::to_string(g.p) + "e" + std::to_string(g.e) + "m" + std::to_string(g.m) + "j" + std::to_string(g.j);
}

}  // namespace

TEST_P(TowerCases, EvaluatorsMatchFormulas) {
  std::mt19937_64 rng(1);
  auto big = make_ambient(t, 2 * t.m);
  for (int s = 0; s < 60; ++s) {
    FieldElem x = oracle::random_elem(*big, rng), y = oracle::random_elem(*big, rng);
    if (x.is_zero()) continue;
    EXPECT_EQ(eval_F(t, *big, x, y), f_oracle(t, *big, x, y));
    EXPECT_EQ(eval_G(t, *big, x, y), g_oracle(t, *big, x, y));
    if (h_denominators_nonzero(t, *big, x)) {
      const FieldElem a = big->from_int(t.a), b = big->from_int(t.b);
      FieldElem dl = big->sub(big->frobenius(big->trace_partial(x, t.j), t.k), a);
      FieldElem dr = big->sub(big->trace_partial(x, t.k), b);
      EXPECT_EQ(eval_H_cross(t, *big, x, y), big->mul(big->mul(eval_H(t, *big, x, y), dl), dr));
    }
  }
  EXPECT_THROW(eval_F(t, *big, big->zero(), big->one()), Error);
}

TEST_P(TowerCases, FZerosAreFiberSolutions) {
  // F(x, y) = 0 exactly when Q_x(y) = x.
  for (const auto& x : oracle::all(*ctx)) {
    if (x.is_zero()) continue;
    std::vector<FieldElem> zeros;
    for (const auto& y : oracle::all(*ctx))
      if (!y.is_zero() && f_oracle(t, *ctx, x, y).is_zero()) zeros.push_back(y);
    EXPECT_EQ(fiber_solutions(t, ctx, x), zeros);
  }
}

TEST_P(TowerCases, EnumerationAgreesWithBruteForceAndSerial) {
  for (unsigned n = 1; n <= 3; ++n) {
    auto par = enumerate_rational(t, n, Variant::F);
    auto ser = enumerate_rational_serial(t, n, Variant::F);
    EXPECT_EQ(coords_of(par), coords_of(ser));
    if (n <= 2) {
      auto brute = brute_points(t, *ctx, n);
      std::sort(brute.begin(), brute.end());
      EXPECT_EQ(coords_of(par), brute);
    }
    auto listed = coords_of(par);
    EXPECT_TRUE(std::is_sorted(listed.begin(), listed.end()));
  }
  for (Variant v : {Variant::G, Variant::H}) {
    auto par = enumerate_rational(t, 3, v), ser = enumerate_rational_serial(t, 3, v);
    EXPECT_EQ(coords_of(par), coords_of(ser));
    for (const auto& pt : par) {
      const auto& c = pt.coords();
      for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        if (v == Variant::G) {
          EXPECT_TRUE(g_oracle(t, *ctx, c[i], c[i + 1]).is_zero());
        } else {
          EXPECT_TRUE(eval_H_cross(t, *ctx, c[i], c[i + 1]).is_zero());
        }
      }
    }
  }
}

TEST_P(TowerCases, EnumerationIndependentOfThreads) {
  int before = worker_count();
  set_worker_count(1);
  auto one = coords_of(enumerate_rational(t, 3, Variant::F));
  set_worker_count(4);
  auto four = coords_of(enumerate_rational(t, 3, Variant::F));
  set_worker_count(before);
  EXPECT_EQ(one, four);
}

TEST_P(TowerCases, SupersingularCountsAndClosure) {
  for (unsigned n = 1; n <= 3; ++n) {
    auto [got, want] = count_supersingular(t, n);
    EXPECT_EQ(want, (checked_pow(t.q, t.m) - 1) * checked_pow(t.q, (t.m - 1) * (n - 1)));
    EXPECT_EQ(got, want) << "n=" << n;
  }
  // Every rational F point has a supersingular head here, and conversely.
  for (const auto& pt : enumerate_rational(t, 2, Variant::F)) {
    bool head_unit = oracle::pow(*ctx, pt.coords()[0], checked_pow(t.q, t.m) - 1) == ctx->one();
    EXPECT_EQ(is_supersingular_point(t, pt), head_unit);
  }
}

TEST_P(TowerCases, RsuRelations) {
  if (t.p_divides_k) GTEST_SKIP();
  const FieldElem a = ctx->from_int(t.a), b = ctx->from_int(t.b);
  for (const auto& x : oracle::all(*ctx)) {
    if (x.is_zero()) continue;
    for (const auto& y : fiber_solutions(t, ctx, x)) {
      RSU v = rsu(t, *ctx, x, y);
      EXPECT_EQ(v.r, oracle::mul(*ctx, y, inv(*ctx, oracle::frob(*ctx, x, t.k))));
      EXPECT_EQ(v.s, oracle::mul(*ctx, oracle::frob(*ctx, y, t.j), inv(*ctx, x)));
      FieldElem u;
      for (unsigned r = 0; r < t.a; ++r) u = oracle::add(*ctx, u, oracle::frob(*ctx, v.r, r * t.k));
      FieldElem ssum;
      for (unsigned s = 0; s < t.b; ++s) ssum = oracle::add(*ctx, ssum, oracle::frob(*ctx, v.s, s * t.j));
      u = oracle::add(*ctx, u, oracle::frob(*ctx, ssum, 1));
      EXPECT_EQ(v.u, u);
      EXPECT_EQ(v.r, ctx->sub(tr(*ctx, v.u, t.k), b));
      EXPECT_EQ(v.s, ctx->sub(a, tr(*ctx, v.u, t.j)));
      EXPECT_TRUE(rsu_relations_hold(t, *ctx, v));
    }
  }
  try {
    rsu(t, *ctx, ctx->one(), ctx->zero());
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::kNotOnCurve || e.code() == ErrorCode::kZeroPoint);
  }
}

TEST_P(TowerCases, GaloisOrbitsAndUSet) {
  if (t.p_divides_k) GTEST_SKIP();
  auto pts = enumerate_rational(t, 2, Variant::F);
  std::set<std::vector<FieldElem>> all_pts;
  for (const auto& pt : pts) all_pts.insert(pt.coords());
  std::vector<FieldElem> mus;
  for (const auto& mu : ctx->subfield_elements(t.m))
    if (!mu.is_zero()) mus.push_back(mu);
  for (const auto& pt : pts) {
    std::set<std::vector<FieldElem>> orbit;
    for (const auto& mu : mus) {
      TowerPoint moved = galois_action(t, mu, pt);
      std::vector<FieldElem> want;
      for (std::size_t i = 0; i < pt.coords().size(); ++i)
        want.push_back(oracle::mul(*ctx, oracle::frob(*ctx, mu, static_cast<unsigned>(t.k * i)), pt.coords()[i]));
      EXPECT_EQ(moved.coords(), want);
      EXPECT_TRUE(all_pts.count(moved.coords()));
      EXPECT_EQ(u_coordinates(t, moved), u_coordinates(t, pt));
      orbit.insert(moved.coords());
    }
    EXPECT_EQ(orbit.size(), mus.size());
  }
  // The trace-defined set against a brute enumeration of (F_{q^m}^*)^{n-1}.
  const FieldElem ab = ctx->from_int(t.a + t.b);
  for (unsigned n = 2; n <= 3; ++n) {
    std::vector<std::vector<FieldElem>> brute{{}};
    for (unsigned l = 0; l + 1 < n; ++l) {
      std::vector<std::vector<FieldElem>> next;
      for (const auto& tup : brute)
        for (const auto& u : mus)
          if (tr(*ctx, u, t.m) == ab) {
            auto e = tup;
            e.push_back(u);
            next.push_back(e);
          }
      brute = next;
    }
    EXPECT_EQ(ssing_u_set(t, n), brute);
    EXPECT_EQ(brute.size(), checked_pow(t.q, (t.m - 1) * (n - 1)));
  }
  try {
    galois_action(t, ctx->zero(), pts.front());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInSubfield);
  }
}

TEST_P(TowerCases, RecordsRoundTrip) {
  for (Variant v : {Variant::F, Variant::G, Variant::H}) {
    for (const auto& pt : enumerate_rational(t, 2, v)) {
      auto rec = point_record(t, pt);
      TowerParams back;
      TowerPoint again = read_point_record(nlohmann::json::parse(rec.dump()), back);
      EXPECT_EQ(back, t);
      EXPECT_EQ(again.coords(), pt.coords());
      EXPECT_EQ(again.variant(), v);
      EXPECT_EQ(rec["supersingular"], is_supersingular_point(t, pt));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, TowerCases,
                         testing::Values(P4{2, 1, 2, 1}, P4{3, 1, 2, 1}, P4{2, 1, 3, 2}, P4{3, 1, 3, 2}, P4{5, 1, 2, 1},
                                         P4{3, 1, 3, 1}),
                         p4_name);

TEST(Towers, HeadlineCounts) {
  struct Row {
    unsigned p, m, j, n;
    std::uint64_t count;
  };
  for (const Row& r : {Row{2, 2, 1, 2, 6}, Row{2, 2, 1, 3, 12}, Row{3, 2, 1, 2, 24}, Row{3, 2, 1, 3, 72},
                       Row{2, 3, 2, 2, 28}, Row{2, 3, 2, 3, 112}}) {
    auto t = TowerParams::make(r.p, 1, r.m, r.j);
    auto [got, want] = count_supersingular(t, r.n);
    EXPECT_EQ(got, r.count);
    EXPECT_EQ(want, r.count);
  }
}

TEST(Towers, IharaBound) {
  EXPECT_EQ(ihara_bound(2, 1), (Rational{3, 2}));
  EXPECT_EQ(ihara_bound(3, 1), (Rational{16, 5}));
  EXPECT_EQ(ihara_bound(2, 2), (Rational{21, 5}));
  EXPECT_EQ(ihara_bound(2, 2).to_text(), "21/5");
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned m = 1; m <= 4; ++m) {
      Rational r = ihara_bound(p, m);
      double pm = std::pow(p, m);
      double want = 2 * (pm * p - 1) / (p + 1 + (p - 1) / (pm - 1));
      EXPECT_NEAR(static_cast<double>(r.num) / r.den, want, 1e-9 * want);
      EXPECT_EQ(std::gcd(r.num, r.den), 1u);
    }
  EXPECT_THROW(ihara_bound(4, 1), Error);
}

TEST(Towers, PointValidation) {
  auto t = TowerParams::make(2, 1, 2, 1);
  auto ctx = make_ambient(t, 2);
  FieldElem w = ctx->basis_element(1);
  auto expect_code = [&](Variant v, std::vector<FieldElem> c, ErrorCode code) {
    try {
      TowerPoint::make(t, ctx, v, std::move(c));
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code);
    }
  };
  expect_code(Variant::F, {w, ctx->zero()}, ErrorCode::kZeroPoint);
  auto ys = fiber_solutions(t, ctx, w);
  FieldElem off = ctx->one();
  while (std::find(ys.begin(), ys.end(), off) != ys.end()) off = ctx->add(off, w);
  expect_code(Variant::F, {w, off}, ErrorCode::kNotOnCurve);
  TowerPoint ok = TowerPoint::make(t, ctx, Variant::F, {w, ys.front()});
  EXPECT_EQ(ok.rationality_degree(), 2u);
  EXPECT_EQ(TowerPoint::make(t, ctx, Variant::F, {ctx->one()}).rationality_degree(), 1u);
  // Any u that kills an H denominator is refused as a non-final coordinate.
  for (const auto& u : ctx->subfield_elements(2)) {
    if (u.is_zero() || h_denominators_nonzero(t, *ctx, u)) continue;
    for (const auto& v : ctx->subfield_elements(2))
      if (!v.is_zero()) expect_code(Variant::H, {u, v}, ErrorCode::kZeroDenominator);
  }
  EXPECT_EQ(parse_variant("G"), Variant::G);
  EXPECT_THROW(parse_variant("X"), Error);
}

TEST(Towers, MalformedRecords) {
  TowerParams back;
  for (const char* text : {R"({"variant":"F"})", R"({"variant":"F","params":{"p":2,"e":1,"m":2,"j":1},"coords":[1]})",
                           R"({"variant":"Q","params":{"p":2,"e":1,"m":2,"j":1},"coords":["[1,0]"]})"}) {
    try {
      read_point_record(nlohmann::json::parse(text), back);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << text;
    }
  }
}
