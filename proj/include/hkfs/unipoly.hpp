#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hkfs/rat.hpp"

namespace hkfs {

/// Dense univariate polynomial over Q in the variable z.
///
/// Coefficient i multiplies z^i. Trailing zeros are stripped on every
/// construction, so the zero polynomial is the empty list and degree() == -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);
  UniPoly(std::initializer_list<Rat> coeffs) : UniPoly(std::vector<Rat>(coeffs)) {}

  /// c * z^k
  static UniPoly monomial(std::size_t k, const Rat& c = Rat(1));
  static UniPoly constant(const Rat& c) { return monomial(0, c); }

  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(); }
  const Rat& lead() const { return c_.back(); }

  Rat eval(const Rat& z) const;
  UniPoly monic() const;
  UniPoly scaled(const Rat& c) const;
  /// Multiply by z^k.
  UniPoly shifted(std::size_t k) const;
  /// Keep only the terms of degree < n.
  UniPoly truncated(std::size_t n) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator-() const { return scaled(Rat(-1)); }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string str() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

/// Quotient and remainder; throws DomainError when b is zero.
std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);

/// Monic gcd. gcd(0, 0) is 0; b must be nonzero per the arithmetic contract,
/// but a zero argument is tolerated and the other operand's monic form returned.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// True when b divides a exactly.
bool divides(const UniPoly& b, const UniPoly& a);

/// M-th cyclotomic polynomial, by exact division of z^M - 1 by Phi_d over
/// the proper divisors d of M. Throws DomainError for M == 0.
UniPoly cyclotomic(unsigned M);

/// Euler totient.
unsigned euler_phi(unsigned M);

/// A rational function num/den in canonical form.
///
/// Canonical means: num and den coprime, den has integer coefficients with
/// content 1 and a positive leading coefficient. Two equal rational functions
/// therefore compare equal structurally.
class RationalGF {
 public:
  RationalGF() : RationalGF(UniPoly{}, UniPoly::constant(Rat(1))) {}
  /// Throws DomainError when den is zero.
  RationalGF(UniPoly num, UniPoly den);

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }

  /// First n Taylor coefficients at z = 0. Throws DomainError if den(0) == 0.
  std::vector<Rat> expand(std::size_t n) const;

  friend RationalGF operator+(const RationalGF& a, const RationalGF& b);
  friend RationalGF operator-(const RationalGF& a, const RationalGF& b);
  friend RationalGF operator*(const RationalGF& a, const RationalGF& b);

  friend bool operator==(const RationalGF&, const RationalGF&) = default;

  std::string str() const;

 private:
  UniPoly num_;
  UniPoly den_;
};

/// Term a / (1 - delta z) of a partial fraction decomposition.
struct PartialFraction {
  Rat coefficient;
  Rat pole_reciprocal;
  friend bool operator==(const PartialFraction&, const PartialFraction&) = default;
};

/// Decomposes g = sum a_i / (1 - delta_i z), ordered by increasing delta_i.
///
/// Requires deg num < deg den and den splitting over Q into distinct linear
/// factors with nonzero delta_i; otherwise throws DomainError.
std::vector<PartialFraction> partial_fractions(const RationalGF& g);

/// lim_{z -> 1/p^d} (1 - p^d z) g(z).
///
/// Zero when 1/p^d is not a pole; DomainError when the pole has order >= 2.
Rat residue_limit(const RationalGF& g, unsigned d, unsigned long p);

}  // namespace hkfs
