#include <gtest/gtest.h>

#include <ostream>

#include <random>
#include <set>

#include "dtower/field.hpp"
#include "oracles.hpp"

using namespace dtower;

namespace {

struct Shape {
  unsigned p, e, d;
};

void PrintTo(const Shape& c, std::ostream* os) { *os << "p" << c.p << "e" << c.e << "d" << c.d; }

const Shape kShapes[] = {{2, 1, 1}, {2, 1, 2}, {2, 1, 5}, {3, 1, 3}, {5, 1, 2}, {2, 2, 3}, {3, 2, 2}, {7, 1, 2}, {2, 3, 2}};

std::string shape_name(const testing::TestParamInfo<Shape>& info) {
  return "p" + std::to_string(info.param.p) + "e" + std::to_string(info.param.e) + "d" + std::to_string(info.param.d);
}

class FieldShapes : public testing::TestWithParam<Shape> {
 protected:
  FieldPtr ctx = make_field(GetParam().p, GetParam().e, GetParam().d);
};

}  // namespace

TEST(Field, F4TextForms) {
  auto f4 = make_field(2, 1, 2);
  FieldElem w = f4->basis_element(1);
  EXPECT_EQ(f4->to_text(w), "[0,1]");
  EXPECT_EQ(f4->to_text(f4->mul(w, w)), "[1,1]");
  EXPECT_EQ(f4->to_text(f4->zero()), "[0,0]");
  EXPECT_EQ(f4->parse("[1,1]"), f4->add(w, f4->one()));
}

TEST(Field, F9ModulusIsYSquaredPlusOne) {
  auto f9 = make_field(3, 1, 2);
  std::vector<Digit> want{1, 0, 1};
  EXPECT_EQ(f9->ext_modulus(), want);
}

TEST(Field, TextWithNonPrimeBase) {
  auto f16 = make_field(2, 2, 2);
  // inner digits first: coordinate 0 contributes two digits, then coordinate 1
  FieldElem y = f16->basis_element(1);
  EXPECT_EQ(f16->to_text(y), "[0,0,1,0]");
  EXPECT_EQ(f16->parse("[0,0,1,0]"), y);
}

TEST(Field, Errors) {
  EXPECT_THROW(make_field(4, 1, 2), Error);
  try {
    make_field(9, 1, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPrime);
  }
  try {
    make_field(2, 1, 30, FieldOptions{1u << 20});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeCapExceeded);
  }
  auto f4 = make_field(2, 1, 2);
  for (const char* bad : {"[0,2]", "[0]", "0,1", "[0,,1]", "[a,1]", "[0,1,0]"}) {
    try {
      f4->parse(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << bad;
    }
  }
  try {
    f4->inv(f4->zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivisionByZero);
  }
}

TEST(Field, PowHelpers) {
  EXPECT_EQ(checked_pow(3, 4), 81u);
  EXPECT_THROW(checked_pow(2, 64), Error);
  EXPECT_EQ(saturating_pow(2, 70), UINT64_MAX);
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
}

TEST_P(FieldShapes, ModuliAreLeastIrreducibles) {
  const BaseField& f = ctx->base();
  if (ctx->e() > 1) {
    BaseField prime(ctx->p(), {0, 1});
    auto want = oracle::least_irreducible_by_trial(prime, ctx->e());
    std::vector<unsigned> want_u(want.begin(), want.end());
    EXPECT_EQ(ctx->base_modulus(), want_u);
  }
  if (ctx->d() > 1) {
    EXPECT_EQ(ctx->ext_modulus(), oracle::least_irreducible_by_trial(f, ctx->d()));
  }
}

TEST_P(FieldShapes, BaseTablesMatchPolynomialProduct) {
  const BaseField& f = ctx->base();
  for (unsigned a = 0; a < f.q(); ++a)
    for (unsigned b = 0; b < f.q(); ++b) ASSERT_EQ(f.mul(a, b), oracle::base_mul_naive(f, a, b)) << a << "*" << b;
  for (unsigned a = 1; a < f.q(); ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1);
}

TEST_P(FieldShapes, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    FieldElem a = ctx->random(rng), b = ctx->random(rng), c = ctx->random(rng);
    ASSERT_EQ(ctx->mul(a, b), oracle::mul(*ctx, a, b));
    EXPECT_EQ(ctx->add(a, b), ctx->add(b, a));
    EXPECT_EQ(ctx->mul(a, b), ctx->mul(b, a));
    EXPECT_EQ(ctx->mul(ctx->mul(a, b), c), ctx->mul(a, ctx->mul(b, c)));
    EXPECT_EQ(ctx->mul(a, ctx->add(b, c)), ctx->add(ctx->mul(a, b), ctx->mul(a, c)));
    EXPECT_EQ(ctx->add(a, ctx->neg(a)), ctx->zero());
    EXPECT_EQ(ctx->sub(a, b), ctx->add(a, ctx->neg(b)));
    if (!a.is_zero()) {
      EXPECT_EQ(ctx->mul(a, ctx->inv(a)), ctx->one());
    }
    Digit s = static_cast<Digit>(rng() % ctx->q());
    EXPECT_EQ(ctx->scale(s, a), ctx->mul(ctx->from_base(s), a));
  }
}

TEST_P(FieldShapes, FrobeniusAndTraces) {
  std::mt19937_64 rng(11);
  const unsigned d = ctx->d();
  for (int t = 0; t < 60; ++t) {
    FieldElem a = ctx->random(rng);
    for (unsigned i = 0; i <= d + 1; ++i) ASSERT_EQ(ctx->frobenius(a, i), oracle::frob(*ctx, a, i));
    EXPECT_EQ(ctx->frobenius(a, d), a);
    FieldElem tr;
    for (unsigned i = 0; i < d; ++i) tr = ctx->add(tr, ctx->frobenius(a, i));
    EXPECT_EQ(ctx->trace_partial(a, d), tr);
    EXPECT_TRUE(ctx->in_base(tr));
    if (!a.is_zero()) {
      EXPECT_EQ(ctx->qpow_ratio(a, 2, 1), ctx->div(ctx->frobenius(a, 2), ctx->frobenius(a, 1)));
      EXPECT_EQ(ctx->qpow_ratio(a, 1, 1), ctx->one());
    }
  }
  EXPECT_THROW(ctx->qpow_ratio(ctx->zero(), 1, 0), Error);
}

TEST_P(FieldShapes, SubfieldsByDivisor) {
  const unsigned d = ctx->d(), q = ctx->q();
  for (unsigned m = 1; m <= d; ++m) {
    if (d % m != 0) {
      EXPECT_THROW(ctx->subfield_elements(m), Error);
      continue;
    }
    auto sub = ctx->subfield_elements(m);
    EXPECT_EQ(sub.size(), checked_pow(q, m));
    EXPECT_TRUE(std::is_sorted(sub.begin(), sub.end()));
    for (const auto& x : sub) EXPECT_EQ(oracle::frob(*ctx, x, m), x);
    EXPECT_EQ(ctx->subfield_basis(m).size(), m);
  }
  std::size_t members = 0;
  for (const auto& x : oracle::all(*ctx)) members += ctx->in_base(x);
  EXPECT_EQ(members, q);
}

TEST_P(FieldShapes, IndexIsCanonicalOrder) {
  std::set<FieldElem> seen;
  FieldElem prev;
  for (std::uint64_t i = 0; i < ctx->size(); ++i) {
    FieldElem x = ctx->from_index(i);
    EXPECT_EQ(ctx->index(x), i);
    if (i > 0) {
      EXPECT_LT(prev, x);
    }
    EXPECT_EQ(ctx->parse(ctx->to_text(x)), x);
    seen.insert(x);
    prev = x;
  }
  EXPECT_EQ(seen.size(), ctx->size());
}

TEST_P(FieldShapes, PrimitiveElementGeneratesUnits) {
  FieldElem g = ctx->primitive_element();
  EXPECT_EQ(ctx->multiplicative_order(g), ctx->size() - 1);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    FieldElem a = ctx->random(rng);
    if (a.is_zero()) continue;
    auto ord = ctx->multiplicative_order(a);
    EXPECT_EQ((ctx->size() - 1) % ord, 0u);
    EXPECT_EQ(ctx->pow(a, ord), ctx->one());
    EXPECT_EQ(ctx->pow(a, ord), oracle::pow(*ctx, a, ord));
  }
}

TEST_P(FieldShapes, SpanOfBasisIsWholeField) {
  std::vector<FieldElem> basis;
  for (unsigned i = 0; i < ctx->d(); ++i) basis.push_back(ctx->basis_element(i));
  auto all = span_elements(*ctx, basis);
  EXPECT_EQ(all.size(), ctx->size());
}

INSTANTIATE_TEST_SUITE_P(Shapes, FieldShapes, testing::ValuesIn(kShapes), shape_name);

TEST(Field, SameParametersGiveIdenticalFields) {
  auto a = make_field(3, 2, 3), b = make_field(3, 2, 3);
  EXPECT_TRUE(a->same_field(*b));
  EXPECT_EQ(a->ext_modulus(), b->ext_modulus());
  std::mt19937_64 r1(5), r2(5);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a->random(r1), b->random(r2));
}
