#pragma once

#include <cstdint>
#include <vector>

#include "hkfs/fp_poly.hpp"
#include "hkfs/rank_kernels.hpp"

namespace hkfs {

/// Default cap on p^(s n), the dimension of the truncated algebra.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 16;

/// B = F_p[x_1..x_s] / (x_1^q, ..., x_s^q) with q = p^n.
///
/// Monomials are identified with their mixed-radix code sum e_i q^i; the
/// basis is additionally enumerated in graded-lexicographic order (total
/// degree, then exponent tuple), which fixes the column order of every
/// matrix built over B.
class TruncatedAlgebra {
 public:
  /// Throws BudgetError when p^(s n) exceeds budget.
  TruncatedAlgebra(std::uint32_t p, std::size_t s, unsigned n, std::uint64_t budget = kDefaultBudget);

  std::uint32_t p() const { return p_; }
  std::size_t s() const { return s_; }
  unsigned n() const { return n_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t dim() const { return dim_; }

  /// Exponent vector of the basis element at graded-lex position pos.
  Exponent monomial(std::size_t pos) const;
  /// Graded-lex position of a monomial inside the box.
  std::size_t position(const Exponent& e) const;

  std::uint64_t code(const Exponent& e) const;
  const std::vector<std::uint32_t>& grlex_codes() const { return grlex_; }
  const std::vector<std::uint32_t>& grlex_position_of_code() const { return position_; }

 private:
  std::uint32_t p_;
  std::size_t s_;
  unsigned n_;
  std::uint64_t q_;
  std::uint64_t dim_;
  std::vector<std::uint32_t> grlex_;     // position -> code
  std::vector<std::uint32_t> position_;  // code -> position
};

/// Rank over F_p of b -> g*b on B.
///
/// The multiplication matrix splits into independent blocks: columns b and
/// b' interact only through a shared image monomial. Blocks are found by
/// union-find over monomials and eliminated separately, bit-packed for p = 2.
/// g must already be reduced modulo (x_i^q).
std::uint64_t mult_rank(const FpPoly& g, const TruncatedAlgebra& alg, Exec exec = Exec::parallel);

/// dim_k k[[x]] / (x_1^(p^n), ..., x_s^(p^n), f^a).
///
/// Throws DomainError when f is zero or has a nonzero constant term, and
/// BudgetError when p^(s n) exceeds budget.
std::uint64_t colength(const FpPoly& f, std::uint64_t a, unsigned n,
                       std::uint64_t budget = kDefaultBudget, Exec exec = Exec::parallel);

}  // namespace hkfs
