#include "hkfs/cyclo_cancel.hpp"

#include <stdexcept>

#include "hkfs/error.hpp"
#include "hkfs/fp_poly.hpp"

namespace hkfs {

std::vector<unsigned> divisors(unsigned M) {
  std::vector<unsigned> out;
  for (unsigned k = 1; k <= M; ++k) {
    if (M % k == 0) out.push_back(k);
  }
  return out;
}

unsigned distinct_prime_factors(unsigned M) {
  unsigned count = 0;
  for (unsigned q = 2; q * q <= M; ++q) {
    if (M % q != 0) continue;
    ++count;
    while (M % q == 0) M /= q;
  }
  return count + (M > 1 ? 1 : 0);
}

void CancellationInput::validate() const {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (d == 0) throw DomainError("d must be positive");
  if (a_d.is_zero()) throw DomainError("a_d must be nonzero");
  if (a0.empty()) throw DomainError("a_0 table is empty");
}

Rat CancellationInput::term(std::uint64_t n) const {
  return a_d * Rat(ipow(p, d * n)) + a0[n % a0.size()];
}

PQ build_pq(const CancellationInput& inp) {
  inp.validate();
  const std::size_t M = inp.a0.size();
  const Rat pd(ipow(inp.p, inp.d));
  std::vector<Rat> c(M + 1);
  c[0] = inp.a_d + inp.a0[0];
  for (std::size_t i = 1; i < M; ++i) c[i] = inp.a0[i] - pd * inp.a0[i - 1];
  c[M] = -inp.a_d - pd * inp.a0[M - 1];
  const UniPoly Q = UniPoly{Rat(1), -pd} * (UniPoly::constant(Rat(1)) - UniPoly::monomial(M));
  return {UniPoly(std::move(c)), Q};
}

bool check_pd_not_root(const CancellationInput& inp) {
  const PQ pq = build_pq(inp);
  return !pq.P.eval(Rat(ipow(inp.p, inp.d)).inverse()).is_zero();
}

SMSystem sm_system(unsigned M, std::uint32_t p, unsigned d) {
  if (M == 0) throw DomainError("M must be positive");
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (d == 0) throw DomainError("d must be positive");
  const UniPoly phi = cyclotomic(M);
  const std::size_t rows = static_cast<std::size_t>(phi.degree());
  const Rat pd(ipow(p, d));

  SMSystem sys{M, p, d, RatMatrix(rows, RatRow(M)), std::vector<Rat>(rows)};
  for (std::size_t i = 0; i < rows; ++i) sys.cyclotomic_coeffs[i] = -phi.coeff(i);

  // Unknown a_0(k) enters P with z^k - p^d z^(k+1), k = 0..M-1 (the a_d terms
  // vanish at zeta_M since they carry the factor 1 - z^M).
  for (unsigned k = 0; k < M; ++k) {
    const UniPoly col = UniPoly::monomial(k) - UniPoly::monomial(k + 1, pd);
    const UniPoly red = divrem(col, phi).second;
    for (std::size_t i = 0; i < rows; ++i) sys.matrix[i][k] = red.coeff(i);
  }
  return sys;
}

unsigned sm_dimension(unsigned M, std::uint32_t p, unsigned d) {
  const SMSystem sys = sm_system(M, p, d);
  const std::size_t r = rank(sys.matrix);
  if (r != euler_phi(M)) {
    throw std::logic_error("S_M system for M=" + std::to_string(M) + " has rank " + std::to_string(r) +
                           ", expected " + std::to_string(euler_phi(M)));
  }
  return M - static_cast<unsigned>(r);
}

std::vector<std::vector<Rat>> vl_basis(unsigned M, unsigned l) {
  if (l == 0 || l == M || M % l != 0) {
    throw DomainError(std::to_string(l) + " is not a proper divisor of " + std::to_string(M));
  }
  std::vector<std::vector<Rat>> out(l, std::vector<Rat>(M));
  for (unsigned r = 0; r < l; ++r) {
    for (unsigned i = r; i < M; i += l) out[r][i] = Rat(1);
  }
  return out;
}

namespace {

RatMatrix stacked_vl(unsigned M) {
  RatMatrix all;
  for (unsigned l : divisors(M)) {
    if (l == M) continue;
    for (auto& v : vl_basis(M, l)) all.push_back(std::move(v));
  }
  return all;
}

}  // namespace

unsigned vl_sum_dimension(unsigned M) {
  if (M < 2) throw DomainError("M must be at least 2");
  return static_cast<unsigned>(rank(stacked_vl(M)));
}

QuestionRecord question_check(unsigned M, std::uint32_t p, unsigned d) {
  if (M < 2) throw DomainError("M must be at least 2");
  const SMSystem sys = sm_system(M, p, d);
  bool contained = true;
  for (const auto& v : stacked_vl(M)) {
    for (const auto& row : sys.matrix) {
      Rat acc;
      for (unsigned k = 0; k < M; ++k) acc += row[k] * v[k];
      if (!acc.is_zero()) contained = false;
    }
  }
  if (!contained) throw std::logic_error("a periodic vector falls outside S_" + std::to_string(M));
  QuestionRecord r{};
  r.M = M;
  r.p = p;
  r.d = d;
  r.sm_dim = M - static_cast<unsigned>(rank(sys.matrix));
  r.vl_dim = vl_sum_dimension(M);
  r.containment_ok = contained;
  r.equal = r.sm_dim == r.vl_dim;
  r.distinct_primes = distinct_prime_factors(M);
  r.observation_only = r.distinct_primes >= 3;
  return r;
}

CancellationReport cancellation_analyze(const CancellationInput& inp) {
  const PQ pq = build_pq(inp);
  CancellationReport rep{pq.P, pq.Q, check_pd_not_root(inp), {}, RationalGF(pq.P, pq.Q)};
  for (unsigned k : divisors(static_cast<unsigned>(inp.a0.size()))) {
    if (divides(cyclotomic(k), pq.P)) rep.dividing_cyclotomics.push_back(k);
  }
  return rep;
}

}  // namespace hkfs
