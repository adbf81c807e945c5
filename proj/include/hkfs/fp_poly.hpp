#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hkfs {

using Exponent = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);

/// Sparse polynomial over the prime field F_p in a fixed number of variables.
///
/// Coefficients are stored in [1, p-1]; zero terms are never kept.
class FpPoly {
 public:
  /// The zero polynomial. Throws DomainError unless p is prime and s >= 1.
  FpPoly(std::uint32_t p, std::size_t num_vars);

  static FpPoly one(std::uint32_t p, std::size_t num_vars);
  /// x_{var}, 0-based.
  static FpPoly variable(std::uint32_t p, std::size_t num_vars, std::size_t var);

  std::uint32_t p() const { return p_; }
  std::size_t num_vars() const { return s_; }
  const std::map<Exponent, std::uint32_t>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool has_constant_term() const;
  /// Smallest total degree among the terms; 0 for the zero polynomial.
  std::uint64_t order() const;

  /// Adds c * x^e, with c reduced mod p. Throws DomainError on a length mismatch.
  void add_term(const Exponent& e, std::int64_t c);

  /// The same polynomial placed in a ring with more variables: this ring's
  /// variables land at positions offset..offset+s-1.
  FpPoly embedded(std::size_t total_vars, std::size_t offset) const;

  /// f^(p^i), which in characteristic p only rescales exponents.
  FpPoly frobenius(unsigned i) const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly&, const FpPoly&) = default;

  /// Text form using x1..xs, e.g. "x1^3 + x1*x2*x3".
  std::string str() const;

 private:
  std::uint32_t p_;
  std::size_t s_;
  std::map<Exponent, std::uint32_t> terms_;
};

/// Drops every term with some exponent >= q. q must be a power of f.p().
FpPoly truncate(const FpPoly& f, std::uint64_t q);

/// f^a modulo (x_1^q, ..., x_s^q), via the base-p digits of a and the
/// Frobenius identity, truncating after every multiplication.
FpPoly power_mod(const FpPoly& f, std::uint64_t a, std::uint64_t q);

/// Product truncated modulo (x_1^q, ..., x_s^q).
FpPoly mul_trunc(const FpPoly& a, const FpPoly& b, std::uint64_t q);

struct ParsedPoly {
  FpPoly poly;
  /// Canonical 1-based index (x = x1, y = x2, z = x3, w = x4) of each ring variable.
  std::vector<unsigned> var_index;
};

/// Parses `c*x1^e1*x2^e2 + ...` with aliases x, y, z, w for x1..x4.
///
/// Without num_vars the distinct variables present, in canonical index
/// order, become the ring variables. With num_vars, xi maps to position i-1
/// and every index must be <= num_vars. Integer coefficients are reduced
/// mod p and vanishing terms dropped.
ParsedPoly parse_fp_poly(std::string_view text, std::uint32_t p,
                         std::optional<std::size_t> num_vars = std::nullopt);

}  // namespace hkfs
