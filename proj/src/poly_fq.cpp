#include "poly_fq.hpp"

#include <algorithm>

namespace dtower::detail {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0) return static_cast<int>(i);
  return -1;
}

Poly sub(const BaseField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Digit x = i < a.size() ? a[i] : 0;
    Digit y = i < b.size() ? b[i] : 0;
    r[i] = f.sub(x, y);
  }
  trim(r);
  return r;
}

Poly mul(const BaseField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

void divmod(const BaseField& f, Poly a, const Poly& b, Poly& quo, Poly& r) {
  trim(a);
  int db = degree(b);
  if (db < 0) throw Error(ErrorCode::kDivisionByZero, "polynomial division by zero");
  Digit lead_inv = f.inv(b[db]);
  int da = degree(a);
  quo.assign(da >= db ? da - db + 1 : 0, 0);
  for (int i = da; i >= db; --i) {
    Digit t = f.mul(a[i], lead_inv);
    if (t == 0) continue;
    quo[i - db] = t;
    for (int k = 0; k <= db; ++k) a[i - db + k] = f.sub(a[i - db + k], f.mul(t, b[k]));
  }
  trim(a);
  trim(quo);
  r = std::move(a);
}

Poly rem(const BaseField& f, Poly a, const Poly& b) {
  Poly quo, r;
  divmod(f, std::move(a), b, quo, r);
  return r;
}

Poly mulmod(const BaseField& f, const Poly& a, const Poly& b, const Poly& m) {
  return rem(f, mul(f, a, b), m);
}

Poly powmod(const BaseField& f, Poly a, std::uint64_t n, const Poly& m) {
  Poly result{1};
  result = rem(f, result, m);
  a = rem(f, std::move(a), m);
  while (n > 0) {
    if (n & 1) result = mulmod(f, result, a, m);
    n >>= 1;
    if (n > 0) a = mulmod(f, a, a, m);
  }
  return result;
}

Poly gcd(const BaseField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Digit li = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, li);
  }
  return a;
}

bool is_irreducible(const BaseField& f, const Poly& g) {
  int n = degree(g);
  if (n <= 0) return false;
  if (n == 1) return true;
  const Poly y{0, 1};
  Poly power = y;
  for (int i = 1; i <= n / 2; ++i) {
    power = powmod(f, power, f.q(), g);
    Poly diff = sub(f, power, y);
    Poly h = gcd(f, g, diff);
    if (degree(h) != 0) return false;
  }
  return true;
}

Poly least_irreducible(const BaseField& f, unsigned degree) {
  const unsigned q = f.q();
  Poly cand(degree + 1, 0);
  cand[degree] = 1;
  // Odometer over the lower coefficients, c_0 fastest.
  while (true) {
    if (is_irreducible(f, cand)) return cand;
    unsigned i = 0;
    while (i < degree) {
      if (++cand[i] < q) break;
      cand[i] = 0;
      ++i;
    }
    if (i == degree) break;
  }
  throw Error(ErrorCode::kNoIrreducibleFound, "no monic irreducible of degree " + std::to_string(degree));
}

}  // namespace dtower::detail
