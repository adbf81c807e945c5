#pragma once

#include <cstdint>
#include <vector>

#include "hkfs/linalg_q.hpp"
#include "hkfs/rat.hpp"
#include "hkfs/unipoly.hpp"

namespace hkfs {

/// e_n = a_d p^(d n) + a_0(n mod M).
struct CancellationInput {
  std::uint32_t p;
  unsigned d;
  Rat a_d;
  std::vector<Rat> a0;

  /// Throws DomainError unless p is prime, d >= 1, a_d != 0 and a0 is nonempty.
  void validate() const;
  Rat term(std::uint64_t n) const;
};

/// The series of a CancellationInput as P/Q with Q = (1 - p^d z)(1 - z^M),
/// before any cancellation.
struct PQ {
  UniPoly P;
  UniPoly Q;
};

PQ build_pq(const CancellationInput& inp);

/// P(1/p^d) != 0.
bool check_pd_not_root(const CancellationInput& inp);

/// P(zeta_M) = 0 written in the basis 1, zeta, ..., zeta^(phi(M)-1) of
/// Q(zeta_M): matrix * (a_0(0), ..., a_0(M-1)) = 0.
struct SMSystem {
  unsigned M;
  std::uint32_t p;
  unsigned d;
  RatMatrix matrix;                   // phi(M) x M
  std::vector<Rat> cyclotomic_coeffs;  // Phi_M = z^phi(M) - sum b_i z^i
};

SMSystem sm_system(unsigned M, std::uint32_t p, unsigned d);

/// M - rank of the system. Throws std::logic_error if the rank is not phi(M).
unsigned sm_dimension(unsigned M, std::uint32_t p, unsigned d);

/// The l-periodic indicator vectors of Q^M. Requires l | M, l != M.
std::vector<std::vector<Rat>> vl_basis(unsigned M, unsigned l);

/// Dimension of the sum of V_l over the proper divisors l of M (M >= 2).
unsigned vl_sum_dimension(unsigned M);

struct QuestionRecord {
  unsigned M;
  std::uint32_t p;
  unsigned d;
  unsigned sm_dim;
  unsigned vl_dim;
  bool containment_ok;
  bool equal;
  unsigned distinct_primes;
  /// True when M has three or more prime factors: the comparison is an
  /// observation, not something the library asserts.
  bool observation_only;
};

/// Compares dim S_M with dim sum V_l. Throws std::logic_error if some V_l
/// vector falls outside S_M.
QuestionRecord question_check(unsigned M, std::uint32_t p, unsigned d);

struct CancellationReport {
  UniPoly P;
  UniPoly Q;
  bool pd_root_check;
  std::vector<unsigned> dividing_cyclotomics;
  RationalGF simplified;
};

CancellationReport cancellation_analyze(const CancellationInput& inp);

std::vector<unsigned> divisors(unsigned M);
unsigned distinct_prime_factors(unsigned M);

}  // namespace hkfs
