#pragma once

// Normalized rank-m Drinfeld modules phi_T = -tau^m + g tau^j + 1 over the
// ambient field, and the polynomial ring A = F_q[T] acting through them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtower/field.hpp"
#include "dtower/ore.hpp"
#include "json.hpp"

namespace dtower {

/// Element of A = F_q[T], low coefficient first, trailing zeros trimmed.
class APoly {
 public:
  explicit APoly(std::shared_ptr<const BaseField> base) : base_(std::move(base)) {}
  APoly(std::shared_ptr<const BaseField> base, std::vector<Digit> coeffs);

  /// Coefficients given as integers, reduced into the prime field.
  static APoly from_integers(std::shared_ptr<const BaseField> base, const std::vector<long long>& coeffs);
  static APoly constant(std::shared_ptr<const BaseField> base, Digit c);
  /// T^n.
  static APoly t_power(std::shared_ptr<const BaseField> base, unsigned n);

  const BaseField& base() const { return *base_; }
  const std::shared_ptr<const BaseField>& base_ptr() const { return base_; }
  const std::vector<Digit>& coeffs() const { return c_; }
  Digit coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Digit{0}; }
  bool is_zero() const { return c_.empty(); }
  std::optional<std::size_t> degree() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Value at T = t.
  Digit value_at(Digit t) const;
  std::string to_text() const;

  bool operator==(const APoly& o) const { return c_ == o.c_; }

 private:
  std::shared_ptr<const BaseField> base_;
  std::vector<Digit> c_;
};

APoly operator+(const APoly& a, const APoly& b);
APoly operator-(const APoly& a, const APoly& b);
APoly operator*(const APoly& a, const APoly& b);
APoly pow(const APoly& a, unsigned n);
/// a scaled to leading coefficient 1 (zero stays zero).
APoly monic(const APoly& a);
/// Quotient and remainder; b nonzero.
void divmod(const APoly& a, const APoly& b, APoly& quo, APoly& rem);
/// Monic gcd (zero when both are zero).
APoly gcd(const APoly& a, const APoly& b);
/// Monic lcm.
APoly lcm(const APoly& a, const APoly& b);

class DrinfeldModule {
 public:
  /// Requires 2 <= m, 1 <= j < m and gcd(j, m - j) = 1 (BadRankPair otherwise).
  static DrinfeldModule make(FieldPtr ctx, unsigned m, unsigned j, const FieldElem& g);

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldPtr& ctx_ptr() const { return ctx_; }
  unsigned m() const { return m_; }
  unsigned j() const { return j_; }
  const FieldElem& g() const { return g_; }

  /// -tau^m + g tau^j + 1.
  TwistedPoly phi_t() const;

 private:
  DrinfeldModule(FieldPtr ctx, unsigned m, unsigned j, const FieldElem& g) : ctx_(std::move(ctx)), m_(m), j_(j), g_(g) {}
  FieldPtr ctx_;
  unsigned m_, j_;
  FieldElem g_;
};

/// Image of a under T -> phi_T (Horner in the twisted ring).
TwistedPoly phi_a(const DrinfeldModule& phi, const APoly& a);

/// A as seen by this module's base field.
std::shared_ptr<const BaseField> coefficient_ring(const DrinfeldModule& phi);

/// (q^l - 1) / (q - 1), with overflow reported as SizeCapExceeded.
std::uint64_t q_number(unsigned q, unsigned l);

/// g^{N_m}.
FieldElem j_invariant(const DrinfeldModule& phi);
bool is_supersingular(const DrinfeldModule& phi);

/// Least lambda in F_{q^m}^* (canonical order) with g = g' lambda^{q^j - 1},
/// or nothing.  AmbientTooSmall unless m divides the ambient degree.
std::optional<FieldElem> find_isomorphism(const DrinfeldModule& phi, const DrinfeldModule& psi);

/// The module attached to a nonzero point: g = x^{q^m - q^j} - x^{1 - q^j}.
DrinfeldModule module_from_point(FieldPtr ctx, unsigned m, unsigned j, const FieldElem& x);

Subspace torsion_kernel(const DrinfeldModule& phi, const APoly& a);

/// Monic generator of {a : phi_a(mu) = 0}, if its degree is at most `bound`.
APoly annihilator_order(const DrinfeldModule& phi, const FieldElem& mu, unsigned bound);
/// Monic generator of the annihilator of a phi_T-stable subspace.
APoly annihilator_of(const DrinfeldModule& phi, const Subspace& s, unsigned bound);
/// Smallest phi_T-stable F_q-subspace containing mu.
Subspace cyclic_module(const DrinfeldModule& phi, const FieldElem& mu);

/// {p, e, m, j, g_j, J, supersingular}.
nlohmann::json to_json(const DrinfeldModule& phi);

}  // namespace dtower
