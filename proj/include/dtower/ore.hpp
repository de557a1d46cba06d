#pragma once

// Twisted polynomials sum g_i tau^i over a FieldCtx, with tau a = a^q tau,
// acting on the ambient field as q-linearized maps; F_q-subspaces of the
// ambient in canonical reduced echelon form.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtower/field.hpp"
#include "dtower/linalg.hpp"

namespace dtower {

/// An F_q-subspace of the ambient field.  The basis rows are the coordinate
/// vectors (in 1, y, ..., y^{d-1}) of a reduced echelon matrix, so two equal
/// subspaces always have identical bases.
class Subspace {
 public:
  static Subspace zero(FieldPtr ctx);
  static Subspace span(FieldPtr ctx, std::span<const FieldElem> gens);

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldPtr& ctx_ptr() const { return ctx_; }
  std::size_t dimension() const { return basis_.size(); }
  /// q^dimension, saturated.
  std::uint64_t cardinality() const;
  const std::vector<FieldElem>& basis() const { return basis_; }

  bool contains(const FieldElem& v) const;
  bool is_subspace_of(const Subspace& o) const;
  Subspace join(const Subspace& o) const;
  /// All elements in canonical order; throws SizeCapExceeded above the context cap.
  std::vector<FieldElem> elements() const;

  bool operator==(const Subspace& o) const;

 private:
  Subspace(FieldPtr ctx) : ctx_(std::move(ctx)) {}
  FieldPtr ctx_;
  std::vector<FieldElem> basis_;
  std::vector<unsigned> pivots_;
};

class TwistedPoly {
 public:
  explicit TwistedPoly(FieldPtr ctx) : ctx_(std::move(ctx)) {}
  TwistedPoly(FieldPtr ctx, std::vector<FieldElem> coeffs);

  static TwistedPoly constant(FieldPtr ctx, const FieldElem& c);
  /// c * tau^i.
  static TwistedPoly monomial(FieldPtr ctx, std::size_t i, const FieldElem& c);

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldPtr& ctx_ptr() const { return ctx_; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  /// Coefficient of tau^i (zero past the end).
  FieldElem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : FieldElem{}; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Empty for the zero polynomial.
  std::optional<std::size_t> tau_degree() const;

  bool operator==(const TwistedPoly& o) const;

 private:
  FieldPtr ctx_;
  std::vector<FieldElem> coeffs_;
};

TwistedPoly operator+(const TwistedPoly& f, const TwistedPoly& g);
TwistedPoly operator-(const TwistedPoly& f, const TwistedPoly& g);
TwistedPoly operator-(const TwistedPoly& f);
/// Twisted product: (a tau^i)(b tau^j) = a b^{q^i} tau^{i+j}.
TwistedPoly operator*(const TwistedPoly& f, const TwistedPoly& g);
/// c * f (left multiplication by a constant).
TwistedPoly scale(const FieldElem& c, const TwistedPoly& f);

FieldElem evaluate(const TwistedPoly& f, const FieldElem& mu);
FieldElem point_derivation(const TwistedPoly& f);

/// d x d matrix over F_q; column i holds the coordinates of f(y^i).
FqMatrix linear_matrix(const TwistedPoly& f);

Subspace kernel(const TwistedPoly& f);
/// Every mu in the ambient with f(mu) = c, canonical order.
std::vector<FieldElem> solve_affine(const TwistedPoly& f, const FieldElem& c);
/// F_q-span of f applied to a subspace.
Subspace image(const TwistedPoly& f, const Subspace& s);

/// The same polynomial over another ambient.  Every coefficient must lie in
/// F_q, the only subfield shared canonically by independently built contexts.
TwistedPoly rebase(const TwistedPoly& f, FieldPtr target);

/// Least multiple D of the ambient degree, D <= max_d, such that the kernel of
/// f over F_{q^D} has F_q-dimension target_dim.  Coefficients must lie in F_q
/// and the constant coefficient must be nonzero.
unsigned splitting_degree(const TwistedPoly& f, std::size_t target_dim, unsigned max_d);

/// "g0 + g1*t + g2*t^2", zero terms skipped; "0" for the zero polynomial.
std::string to_text(const TwistedPoly& f);
TwistedPoly parse_twisted(FieldPtr ctx, std::string_view text);

}  // namespace dtower
