#pragma once

// Finite fields F_{q^d} built as F_q[y]/(g(y)) over F_q = F_p[x]/(h(x)).
//
// Elements of F_q are stored as a single Digit: the base-p number whose
// digits are the coefficients of 1, x, ..., x^{e-1}.  An element of F_{q^d}
// is a fixed-capacity array of d such digits, the coordinates in the F_q-basis
// {1, y, ..., y^{d-1}}.  Both moduli are the least monic irreducibles of their
// degree in the canonical order (see `canonical order` below), so two
// constructions with the same (p, e, d) agree bit for bit.
//
// Canonical order on elements: compare the y^{d-1} coordinate first, then
// y^{d-2}, ... down to the constant coordinate; within F_q compare digits the
// same way (x^{e-1} first).  Equivalently, order by the integer whose base-p
// digits are the flattened coefficient vector.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtower/error.hpp"

namespace dtower {

using Digit = std::uint16_t;

inline constexpr unsigned kMaxExtDegree = 64;
inline constexpr unsigned kMaxBaseOrder = 1024;
inline constexpr std::uint64_t kDefaultMaxElements = std::uint64_t{1} << 26;

class FieldElem {
 public:
  constexpr FieldElem() = default;

  Digit operator[](std::size_t i) const { return c_[i]; }
  Digit& operator[](std::size_t i) { return c_[i]; }

  bool is_zero() const {
    for (Digit v : c_)
      if (v != 0) return false;
    return true;
  }

  bool operator==(const FieldElem&) const = default;

  std::strong_ordering operator<=>(const FieldElem& o) const {
    for (std::size_t i = kMaxExtDegree; i-- > 0;)
      if (c_[i] != o.c_[i]) return c_[i] <=> o.c_[i];
    return std::strong_ordering::equal;
  }

 private:
  std::array<Digit, kMaxExtDegree> c_{};
};

/// Table-driven arithmetic in F_q = F_p[x]/(h).  Requires q <= kMaxBaseOrder.
class BaseField {
 public:
  /// `modulus` is monic of degree e over F_p, low coefficient first, and must
  /// be irreducible (not rechecked here).
  BaseField(unsigned p, std::vector<unsigned> modulus);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Digit add(Digit a, Digit b) const { return add_[a * q_ + b]; }
  Digit sub(Digit a, Digit b) const { return add_[a * q_ + neg_[b]]; }
  Digit neg(Digit a) const { return neg_[a]; }
  Digit mul(Digit a, Digit b) const {
    if (a == 0 || b == 0) return 0;
    unsigned s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Digit inv(Digit a) const;
  Digit div(Digit a, Digit b) const { return mul(a, inv(b)); }

  /// The image of an integer in the prime field F_p.
  Digit from_int(long long n) const;
  /// Coefficients of 1, x, ..., x^{e-1}.
  std::vector<unsigned> digits(Digit a) const;

 private:
  unsigned p_, e_, q_;
  std::vector<unsigned> modulus_;
  std::vector<Digit> add_, neg_, exp_, log_;
};

struct FieldOptions {
  /// Upper bound on q^d at construction and on the size of any enumeration.
  std::uint64_t max_elements = kDefaultMaxElements;
};

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Immutable description of F_{q^d}; owns all element arithmetic.
class FieldCtx {
 public:
  static FieldPtr make(unsigned p, unsigned e, unsigned d, FieldOptions opts = {});

  unsigned p() const { return base_->p(); }
  unsigned e() const { return base_->e(); }
  unsigned d() const { return d_; }
  unsigned q() const { return base_->q(); }
  const BaseField& base() const { return *base_; }
  std::shared_ptr<const BaseField> base_ptr() const { return base_; }
  const FieldOptions& options() const { return opts_; }

  const std::vector<unsigned>& base_modulus() const { return base_->modulus(); }
  /// Monic g(y) over F_q, low coefficient first, length d+1.
  const std::vector<Digit>& ext_modulus() const { return ext_modulus_; }

  /// q^d, saturated at UINT64_MAX.
  std::uint64_t size() const { return size_; }

  FieldElem zero() const { return FieldElem{}; }
  FieldElem one() const { return from_base(1); }
  FieldElem from_base(Digit c) const {
    FieldElem r;
    r[0] = c;
    return r;
  }
  FieldElem from_int(long long n) const { return from_base(base_->from_int(n)); }
  /// y^i for i < d.
  FieldElem basis_element(unsigned i) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem scale(Digit c, const FieldElem& a) const;
  FieldElem inv(const FieldElem& a) const;
  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }
  FieldElem pow(const FieldElem& a, std::uint64_t n) const;

  /// a^{q^i}; i is reduced mod d.
  FieldElem frobenius(const FieldElem& a, std::uint64_t i) const;
  /// sum_{i<l} a^{q^i}.
  FieldElem trace_partial(const FieldElem& a, std::uint64_t l) const;
  /// a^{q^i - q^j} for any i, j >= 0; requires a != 0 unless i == j.
  FieldElem qpow_ratio(const FieldElem& a, std::uint64_t i, std::uint64_t j) const;

  /// True iff a lies in F_{q^m}; m must divide d.
  bool in_subfield(const FieldElem& a, unsigned m) const;
  /// True iff a lies in the base field F_q.
  bool in_base(const FieldElem& a) const;
  /// All of F_{q^m} in canonical order.
  std::vector<FieldElem> subfield_elements(unsigned m) const;
  /// An F_q-basis of F_{q^m} (canonical reduced echelon form).
  std::vector<FieldElem> subfield_basis(unsigned m) const;

  /// The least element (canonical order) generating the multiplicative group.
  /// Needs q^d within the enumeration cap.
  FieldElem primitive_element() const;
  std::uint64_t multiplicative_order(const FieldElem& a) const;

  /// Position in canonical order; requires q^d < 2^63.
  std::uint64_t index(const FieldElem& a) const;
  FieldElem from_index(std::uint64_t n) const;

  FieldElem random(std::mt19937_64& rng) const;

  /// Canonical text: "[c00,c01,...,c10,...]" with inner (F_p-digit) coefficients first.
  std::string to_text(const FieldElem& a) const;
  FieldElem parse(std::string_view text) const;

  /// Whether two contexts describe the same field (same p, e, d).
  bool same_field(const FieldCtx& o) const { return p() == o.p() && e() == o.e() && d_ == o.d_; }

 private:
  FieldCtx() = default;

  FieldElem apply_matrix(const std::vector<Digit>& m, const FieldElem& a) const;

  std::shared_ptr<const BaseField> base_;
  unsigned d_ = 1;
  std::uint64_t size_ = 0;
  FieldOptions opts_;
  std::vector<Digit> ext_modulus_;
  std::vector<Digit> neg_tail_;  // -g_0, ..., -g_{d-1}
  // frob_[i] is the d x d matrix (row-major) of a -> a^{q^i}.
  std::vector<std::vector<Digit>> frob_;
};

/// Every F_q-combination of an independent family, in canonical order.
std::vector<FieldElem> span_elements(const FieldCtx& ctx, std::span<const FieldElem> basis);

inline FieldPtr make_field(unsigned p, unsigned e, unsigned d, FieldOptions opts = {}) {
  return FieldCtx::make(p, e, d, opts);
}

bool is_prime(std::uint64_t n);

/// x^n with overflow reported as SizeCapExceeded.
std::uint64_t checked_pow(std::uint64_t x, unsigned n);
/// x^n saturated at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t x, unsigned n);

}  // namespace dtower
