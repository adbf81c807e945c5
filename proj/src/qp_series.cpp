#include "hkfs/qp_series.hpp"

#include <numeric>

#include "hkfs/error.hpp"
#include "hkfs/fp_poly.hpp"
#include "hkfs/linalg_q.hpp"

namespace hkfs {

namespace {

std::vector<Rat> minimal_period(std::vector<Rat> t) {
  const std::size_t m = t.size();
  for (std::size_t len = 1; len < m; ++len) {
    if (m % len != 0) continue;
    bool ok = true;
    for (std::size_t i = len; i < m && ok; ++i) ok = t[i] == t[i - len];
    if (ok) {
      t.resize(len);
      return t;
    }
  }
  return t;
}

bool all_zero(const std::vector<Rat>& t) {
  for (const auto& x : t) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Rat rpow(std::uint32_t p, std::uint64_t e) { return Rat(ipow(p, e)); }

// c_0..c_d with sum_j c_j x_k^j = v_k.
std::vector<Rat> interpolate(const std::vector<Rat>& x, const std::vector<Rat>& v) {
  const std::size_t n = x.size();
  RatMatrix a(n, RatRow(n));
  for (std::size_t k = 0; k < n; ++k) {
    Rat pw(1);
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] = pw;
      pw *= x[k];
    }
  }
  auto sol = solve(a, v);
  if (!sol) throw DomainError("interpolation nodes are not distinct");
  return *sol;
}

}  // namespace

QuasiPolynomial::QuasiPolynomial(std::uint32_t p, std::vector<std::vector<Rat>> tables) : p_(p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (tables.empty()) throw DomainError("a quasi-polynomial needs at least one table");
  for (auto& t : tables) {
    if (t.empty()) throw DomainError("empty coefficient table");
    t = minimal_period(std::move(t));
  }
  while (tables.size() > 1 && all_zero(tables.back())) tables.pop_back();
  tables_ = std::move(tables);
}

std::size_t QuasiPolynomial::period() const {
  std::size_t m = 1;
  for (const auto& t : tables_) m = std::lcm(m, t.size());
  return m;
}

Rat QuasiPolynomial::operator()(std::uint64_t n) const {
  Rat acc;
  for (std::size_t j = 0; j < tables_.size(); ++j) {
    const Rat& a = tables_[j][n % tables_[j].size()];
    if (!a.is_zero()) acc += a * rpow(p_, j * n);
  }
  return acc;
}

RationalGF series_of_qp(const QuasiPolynomial& qp) {
  RationalGF sum;
  for (unsigned j = 0; j <= qp.degree(); ++j) {
    const auto& t = qp.table(j);
    const std::size_t m = t.size();
    std::vector<Rat> num(m);
    for (std::size_t i = 0; i < m; ++i) num[i] = t[i] * rpow(qp.p(), std::uint64_t{j} * i);
    const UniPoly den = UniPoly::constant(Rat(1)) - UniPoly::monomial(m, rpow(qp.p(), std::uint64_t{j} * m));
    sum = sum + RationalGF(UniPoly(std::move(num)), den);
  }
  return sum;
}

QuasiPolynomial qp_of_series(const RationalGF& g, unsigned d, std::size_t M, std::uint32_t p) {
  if (M == 0) throw DomainError("period must be positive");
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  UniPoly q = UniPoly::constant(Rat(1));
  for (unsigned j = 0; j <= d; ++j) {
    q = q * (UniPoly::monomial(M) - UniPoly::constant(rpow(p, std::uint64_t{j} * M).inverse()));
  }
  if (!divides(g.den(), q) || g.num().degree() >= g.den().degree()) {
    throw DomainError("series " + g.str() + " is not of quasi-polynomial shape for d=" + std::to_string(d) +
                      ", M=" + std::to_string(M));
  }
  const std::vector<Rat> e = g.expand(M * (d + 1));
  std::vector<Rat> nodes(d + 1);
  for (unsigned k = 0; k <= d; ++k) nodes[k] = rpow(p, std::uint64_t{k} * M);

  std::vector<std::vector<Rat>> tables(d + 1, std::vector<Rat>(M));
  for (std::size_t i = 0; i < M; ++i) {
    std::vector<Rat> v(d + 1);
    for (unsigned k = 0; k <= d; ++k) v[k] = e[k * M + i];
    const std::vector<Rat> c = interpolate(nodes, v);
    for (unsigned j = 0; j <= d; ++j) tables[j][i] = c[j] / rpow(p, std::uint64_t{j} * i);
  }
  return QuasiPolynomial(p, std::move(tables));
}

std::optional<SequenceFit> fit_sequence(const std::vector<Rat>& terms, std::uint32_t p, unsigned d,
                                        std::size_t M, std::size_t max_start) {
  if (M == 0) throw DomainError("period must be positive");
  const std::size_t need = M * (d + 1);
  for (std::size_t start = 0; start <= max_start && start + need <= terms.size(); ++start) {
    std::vector<std::vector<Rat>> tables(d + 1, std::vector<Rat>(M));
    for (std::size_t r = 0; r < M; ++r) {
      const std::size_t first = start + r;
      std::vector<Rat> nodes(d + 1), v(d + 1);
      for (unsigned k = 0; k <= d; ++k) {
        nodes[k] = rpow(p, first + k * M);
        v[k] = terms[first + k * M];
      }
      const std::vector<Rat> c = interpolate(nodes, v);
      for (unsigned j = 0; j <= d; ++j) tables[j][first % M] = c[j];
    }
    QuasiPolynomial qp(p, std::move(tables));
    bool ok = true;
    for (std::size_t n = start + need; n < terms.size() && ok; ++n) ok = qp(n) == terms[n];
    if (!ok) continue;

    std::vector<Rat> head(start);
    for (std::size_t n = 0; n < start; ++n) head[n] = terms[n] - qp(n);
    RationalGF gf = series_of_qp(qp) + RationalGF(UniPoly(std::move(head)), UniPoly::constant(Rat(1)));
    return SequenceFit{std::move(qp), start, std::move(gf)};
  }
  return std::nullopt;
}

bool RecurrenceCertificate::holds_on(const std::vector<Rat>& prefix) const {
  if (coefficients.size() != order || verified_len > prefix.size()) return false;
  for (std::size_t n = start + order; n < verified_len; ++n) {
    Rat acc;
    for (unsigned j = 1; j <= order; ++j) acc += coefficients[j - 1] * prefix[n - j];
    if (acc != prefix[n]) return false;
  }
  return true;
}

std::size_t default_max_start(std::size_t prefix_len, unsigned max_order) {
  const std::size_t reserved = 2 * std::size_t{max_order} + 1;
  return prefix_len > reserved ? prefix_len - reserved : 0;
}

std::optional<RecurrenceCertificate> detect_recurrence(const std::vector<Rat>& prefix, unsigned max_order,
                                                       std::size_t max_start) {
  const std::size_t len = prefix.size();
  if (len < 2 * std::size_t{max_order} + max_start + 1) {
    throw DomainError("prefix of length " + std::to_string(len) + " is too short for order " +
                      std::to_string(max_order) + " and start " + std::to_string(max_start));
  }
  for (unsigned m = 1; m <= max_order; ++m) {
    for (std::size_t start = 0; start <= max_start; ++start) {
      IncrementalSolver solver(m);
      bool ok = true;
      for (std::size_t n = start + m; n < len && ok; ++n) {
        RatRow row(m);
        for (unsigned j = 1; j <= m; ++j) row[j - 1] = prefix[n - j];
        ok = solver.add(std::move(row), prefix[n]);
      }
      if (!ok) continue;
      RecurrenceCertificate cert{m, *solver.solution(), start, len};
      if (cert.holds_on(prefix)) return cert;
    }
  }
  return std::nullopt;
}

RationalGF gf_of_certified(const std::vector<Rat>& prefix, const RecurrenceCertificate& cert) {
  if (!cert.holds_on(prefix)) throw DomainError("certificate does not hold on the prefix");
  std::vector<Rat> b(cert.order + 1);
  b[0] = Rat(1);
  for (unsigned j = 1; j <= cert.order; ++j) b[j] = -cert.coefficients[j - 1];
  const UniPoly B(std::move(b));
  const UniPoly E(std::vector<Rat>(prefix.begin(), prefix.begin() + static_cast<long>(cert.verified_len)));
  const UniPoly A = (B * E).truncated(cert.start + cert.order);
  RationalGF g(A, B);
  const std::vector<Rat> back = g.expand(cert.verified_len);
  for (std::size_t n = 0; n < cert.verified_len; ++n) {
    if (back[n] != prefix[n]) throw DomainError("reconstructed series disagrees with the prefix at n=" + std::to_string(n));
  }
  return g;
}

std::string PFractalReport::verdict_text() const {
  const std::string bounds = "prefix length " + std::to_string(terms.size()) + ", max order " +
                             std::to_string(max_order) + ", max start " + std::to_string(max_start);
  if (verdict == Verdict::certified_rational) {
    return "certified-rational (a recurrence fits every computed term; " + bounds + ")";
  }
  return "no-recurrence-found (" + bounds + "; not a proof of irrationality)";
}

PFractalReport sequence_report(std::string source, std::vector<Rat> terms, unsigned max_order,
                               std::optional<std::size_t> max_start) {
  PFractalReport r;
  r.source = std::move(source);
  r.terms = std::move(terms);
  r.max_order = max_order;
  r.max_start = max_start.value_or(default_max_start(r.terms.size(), max_order));
  r.certificate = detect_recurrence(r.terms, max_order, r.max_start);
  if (r.certificate) {
    r.gf = gf_of_certified(r.terms, *r.certificate);
    r.verdict = Verdict::certified_rational;
  }
  return r;
}

PFractalReport weak_pfractal_report(const PhiFunction& phi, unsigned s, unsigned N, unsigned max_order,
                                    std::optional<std::size_t> max_start) {
  if (N < 2 * max_order + 1) {
    throw DomainError("need N >= 2*max_order + 1 (N=" + std::to_string(N) + ", max order " +
                      std::to_string(max_order) + ")");
  }
  return sequence_report("e_{" + std::to_string(s) + ",n}(" + phi.describe() + ")", e_sequence(phi, s, N),
                         max_order, max_start);
}

RationalGF complement_series(const RationalGF& g, std::uint32_t p, unsigned s) {
  const RationalGF all(UniPoly::constant(Rat(1)), UniPoly{Rat(1), -rpow(p, s)});
  return all - g;
}

Rat rnc_hk(unsigned g, std::uint32_t p, unsigned n) {
  if (g < 2) throw DomainError("rational normal cone needs g >= 2");
  const mpz_class pn = ipow(p, n);
  mpz_class v = (pn - 1) % g;
  const Rat G(g), V(v);
  const Rat half(1, 2);
  return (G + Rat(1)) * half * Rat(mpz_class(pn * pn)) + half * (-V * V + V * G - G + Rat(1));
}

}  // namespace hkfs
