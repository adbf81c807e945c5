#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hkfs/colength.hpp"
#include "hkfs/fp_poly.hpp"
#include "hkfs/rat.hpp"

namespace hkfs {

/// The point a / p^n of [0, 1].
struct DyadicPoint {
  mpz_class a;
  unsigned n = 0;

  /// Reduces (a, n) -> (a/p, n-1) while p | a and n > 0.
  DyadicPoint canonical(std::uint32_t p) const;
  Rat value(std::uint32_t p) const;
  std::string str(std::uint32_t p) const;
};

/// Parses "a/b" (b a power of p), "0" or "1". Throws ParseError on bad
/// syntax and DomainError when b is not a power of p or the point is outside [0, 1].
DyadicPoint parse_point(std::string_view text, std::uint32_t p);

namespace detail {
class PhiNode;
}

/// A rational-valued function on the dyadic points of [0, 1].
///
/// Built from hypersurface functions phi_{f,p}, constants and user tables
/// by sum, product, scaling, reflection and the shift operators. Values are
/// memoized per node, keyed by the canonical point; the caches tolerate
/// concurrent readers and writers.
class PhiFunction {
 public:
  /// t = a/p^n |-> p^(-s n) colength(f, a, n).
  static PhiFunction hypersurface(const FpPoly& f, std::uint64_t budget = kDefaultBudget);
  static PhiFunction constant(std::uint32_t p, const Rat& c);
  /// Arbitrary function of the canonical point.
  static PhiFunction table(std::uint32_t p, std::string label,
                           std::function<Rat(const DyadicPoint&)> fn);

  std::uint32_t p() const;
  std::string describe() const;

  /// Throws DomainError when t is outside [0, 1].
  Rat operator()(const DyadicPoint& t) const;

  friend PhiFunction operator+(const PhiFunction& a, const PhiFunction& b);
  friend PhiFunction operator*(const PhiFunction& a, const PhiFunction& b);
  friend PhiFunction operator*(const Rat& c, const PhiFunction& a);

 private:
  explicit PhiFunction(std::shared_ptr<const detail::PhiNode> node) : node_(std::move(node)) {}
  friend PhiFunction reflect(const PhiFunction& phi);
  friend PhiFunction shift(const PhiFunction& phi, unsigned n, const mpz_class& b);

  std::shared_ptr<const detail::PhiNode> node_;
};

inline Rat phi_eval(const PhiFunction& phi, const DyadicPoint& t) { return phi(t); }

/// t |-> phi(1 - t).
PhiFunction reflect(const PhiFunction& phi);

/// T_{p^n|b}: (a/p^m) |-> phi((a + b p^m) / p^(m+n)). Requires 0 <= b < p^n.
PhiFunction shift(const PhiFunction& phi, unsigned n, const mpz_class& b);

/// phi + psi - phi*psi, the function of a product of hypersurfaces in
/// disjoint variables.
PhiFunction product_phi(const PhiFunction& phi, const PhiFunction& psi);

/// Entries p^(n s) phi(1/p^n) for n = 0..N.
std::vector<Rat> e_sequence(const PhiFunction& phi, unsigned s, unsigned N);

/// Hilbert-Kunz function: colength(f, 1, n).
std::uint64_t hk_function(const FpPoly& f, unsigned n, std::uint64_t budget = kDefaultBudget);

/// F-signature function p^(s n) - colength(f, p^n - 1, n); requires n >= 1.
std::uint64_t fs_function(const FpPoly& f, unsigned n, std::uint64_t budget = kDefaultBudget);

}  // namespace hkfs
