#pragma once

// Univariate polynomials over a BaseField, low coefficient first.  Internal to
// field construction (irreducibility search and inversion).

#include <cstdint>
#include <vector>

#include "dtower/field.hpp"

namespace dtower::detail {

using Poly = std::vector<Digit>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial
Poly sub(const BaseField& f, const Poly& a, const Poly& b);
Poly mul(const BaseField& f, const Poly& a, const Poly& b);
/// Remainder of a modulo b (b nonzero).
Poly rem(const BaseField& f, Poly a, const Poly& b);
/// Quotient and remainder.
void divmod(const BaseField& f, Poly a, const Poly& b, Poly& quo, Poly& r);
Poly mulmod(const BaseField& f, const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const BaseField& f, Poly a, std::uint64_t n, const Poly& m);
/// Monic gcd.
Poly gcd(const BaseField& f, Poly a, Poly b);

/// Ben-Or: f monic of degree n is irreducible iff gcd(f, y^{Q^i} - y) = 1 for
/// 1 <= i <= n/2, where Q = f.q().
bool is_irreducible(const BaseField& f, const Poly& g);

/// Least monic irreducible of the given degree in canonical order: candidates
/// are enumerated by the integer sum c_i Q^i over their lower coefficients.
Poly least_irreducible(const BaseField& f, unsigned degree);

}  // namespace dtower::detail
