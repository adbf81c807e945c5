#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkfs/phi.hpp"
#include "hkfs/rat.hpp"
#include "hkfs/unipoly.hpp"

namespace hkfs {

/// e(n) = sum_j a_j(n mod M_j) p^(j n) with periodic rational tables a_j.
///
/// Tables are reduced to their minimal period on construction and
/// identically-zero leading tables are dropped, so degree() is the true
/// degree (0 for the zero sequence).
class QuasiPolynomial {
 public:
  /// tables[j] is a_j; throws DomainError for a non-prime p, no tables or
  /// an empty table.
  QuasiPolynomial(std::uint32_t p, std::vector<std::vector<Rat>> tables);

  std::uint32_t p() const { return p_; }
  unsigned degree() const { return static_cast<unsigned>(tables_.size() - 1); }
  const std::vector<std::vector<Rat>>& tables() const { return tables_; }
  const std::vector<Rat>& table(unsigned j) const { return tables_.at(j); }
  std::size_t period(unsigned j) const { return tables_.at(j).size(); }
  /// lcm of all table periods.
  std::size_t period() const;

  Rat operator()(std::uint64_t n) const;

  friend bool operator==(const QuasiPolynomial&, const QuasiPolynomial&) = default;

 private:
  std::uint32_t p_;
  std::vector<std::vector<Rat>> tables_;
};

inline Rat qp_eval(const QuasiPolynomial& qp, std::uint64_t n) { return qp(n); }

/// Sum over j, i of a_j(i) p^(j i) z^i / (1 - p^(j M_j) z^(M_j)), canonicalized.
RationalGF series_of_qp(const QuasiPolynomial& qp);

/// Inverse of series_of_qp by interpolation on each residue class mod M.
///
/// Requires g * prod_{j=0..d} (z^M - p^(-j M)) to be a polynomial of degree
/// < M (d + 1); throws DomainError otherwise.
QuasiPolynomial qp_of_series(const RationalGF& g, unsigned d, std::size_t M, std::uint32_t p);

/// A quasi-polynomial valid from index `start` on, together with the exact
/// generating series of the whole sequence (terms before `start` included).
struct SequenceFit {
  QuasiPolynomial qp;
  std::size_t start;
  RationalGF gf;
};

/// Smallest start <= max_start such that one degree-d, period-M
/// quasi-polynomial matches every term from start on. Needs at least
/// start + M (d + 1) terms; nullopt when no start works.
std::optional<SequenceFit> fit_sequence(const std::vector<Rat>& terms, std::uint32_t p, unsigned d,
                                        std::size_t M, std::size_t max_start = 0);

/// e_n = sum_{j=1..m} c_j e_(n-j) for start + m <= n < verified_len.
struct RecurrenceCertificate {
  unsigned order = 0;
  std::vector<Rat> coefficients;
  std::size_t start = 0;
  std::size_t verified_len = 0;

  bool holds_on(const std::vector<Rat>& prefix) const;
  friend bool operator==(const RecurrenceCertificate&, const RecurrenceCertificate&) = default;
};

/// Minimal order, then minimal start. Requires
/// prefix.size() >= 2 max_order + max_start + 1 (DomainError otherwise).
std::optional<RecurrenceCertificate> detect_recurrence(const std::vector<Rat>& prefix, unsigned max_order,
                                                       std::size_t max_start);

/// Largest max_start allowed for a prefix of the given length.
std::size_t default_max_start(std::size_t prefix_len, unsigned max_order);

/// A/B with B = 1 - sum c_j z^j and A the truncation of B * prefix below
/// degree start + order. Throws DomainError when the certificate does not
/// hold or the result fails to re-expand to the prefix.
RationalGF gf_of_certified(const std::vector<Rat>& prefix, const RecurrenceCertificate& cert);

enum class Verdict { certified_rational, no_recurrence_found };

/// Outcome of a recurrence search on a finite prefix. Either verdict is
/// evidence about the computed terms only.
struct PFractalReport {
  std::string source;
  std::vector<Rat> terms;
  unsigned max_order = 0;
  std::size_t max_start = 0;
  std::optional<RecurrenceCertificate> certificate;
  std::optional<RationalGF> gf;
  Verdict verdict = Verdict::no_recurrence_found;

  std::string verdict_text() const;
};

PFractalReport sequence_report(std::string source, std::vector<Rat> terms, unsigned max_order,
                               std::optional<std::size_t> max_start = std::nullopt);

/// Runs detection on e_sequence(phi, s, N). Requires N >= 2 max_order + 1.
PFractalReport weak_pfractal_report(const PhiFunction& phi, unsigned s, unsigned N, unsigned max_order,
                                    std::optional<std::size_t> max_start = std::nullopt);

/// lim_{z -> p^(-d)} (1 - p^d z) g(z).
inline Rat multiplicity_from_series(const RationalGF& g, unsigned d, std::uint32_t p) {
  return residue_limit(g, d, p);
}

/// 1/(1 - p^s z) - g: turns the series of colength(f, p^n - 1, n) into the
/// F-signature series.
RationalGF complement_series(const RationalGF& g, std::uint32_t p, unsigned s);

/// ((g+1)/2) p^(2n) + (-v^2 + v g - g + 1)/2 with v = (p^n - 1) mod g.
Rat rnc_hk(unsigned g, std::uint32_t p, unsigned n);

}  // namespace hkfs
