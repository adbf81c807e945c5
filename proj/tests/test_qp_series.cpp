#include <doctest.h>

#include <numeric>
#include <random>

#include "hkfs/error.hpp"
#include "hkfs/qp_series.hpp"
#include "oracles.hpp"

using namespace hkfs;

namespace {

UniPoly P(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return UniPoly(std::move(v));
}

std::vector<Rat> rats(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return v;
}

// sum_j a_j(n mod M_j) p^(j n), written out independently of QuasiPolynomial.
Rat eval_tables(const std::vector<std::vector<Rat>>& t, std::uint32_t p, unsigned n) {
  Rat acc;
  for (std::size_t j = 0; j < t.size(); ++j) acc += t[j][n % t[j].size()] * Rat(ipow(p, j * n));
  return acc;
}

struct RandomQp {
  std::uint32_t p;
  unsigned d;
  std::vector<std::vector<Rat>> tables;
};

RandomQp random_qp(std::mt19937_64& rng) {
  static const std::uint32_t primes[] = {2, 3, 5};
  RandomQp r;
  r.p = primes[rng() % 3];
  r.d = static_cast<unsigned>(rng() % 4);
  for (unsigned j = 0; j <= r.d; ++j) {
    const std::size_t m = 1 + rng() % 6;
    std::vector<Rat> t(m);
    for (auto& x : t) x = oracle::random_rat(rng);
    if (j == r.d && std::all_of(t.begin(), t.end(), [](const Rat& x) { return x.is_zero(); })) t[0] = Rat(1);
    r.tables.push_back(std::move(t));
  }
  return r;
}

// Direct evaluation of the rational normal cone formula with plain integers.
long rnc_direct(long g, long p, unsigned n) {
  long pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  const long v = (pn - 1) % g;
  return ((g + 1) * pn * pn + (-v * v + v * g - g + 1)) / 2;
}

}  // namespace

TEST_SUITE("qp_series") {
  TEST_CASE("quasi-polynomial normalization and evaluation") {
    const QuasiPolynomial one(2, {rats({1})});
    for (unsigned n = 0; n < 5; ++n) CHECK(one(n) == Rat(1));

    const QuasiPolynomial q(3, {rats({0, -1}), rats({1})});
    CHECK(q(3) == Rat(26));

    const QuasiPolynomial r5(2, {rats({-2, 0, 1, 1}), rats({0}), rats({3})});
    CHECK(r5(1) == Rat(12));
    CHECK(r5.degree() == 2);

    const QuasiPolynomial periodic(2, {rats({1, 2, 1, 2, 1, 2})});
    CHECK(periodic.period(0) == 2);
    const QuasiPolynomial trimmed(3, {rats({1}), rats({0, 0}), rats({0})});
    CHECK(trimmed.degree() == 0);

    CHECK_THROWS_AS(QuasiPolynomial(4, {rats({1})}), DomainError);
    CHECK_THROWS_AS(QuasiPolynomial(2, {}), DomainError);
    CHECK_THROWS_AS(QuasiPolynomial(2, {{}}), DomainError);
  }

  TEST_CASE("series_of_qp") {
    CHECK(series_of_qp(QuasiPolynomial(2, {rats({1})})) == RationalGF(P({1}), P({1, -1})));

    const long p = 2, p2 = p * p;
    const QuasiPolynomial r5(2, {rats({-2, 0, 1, 1}), rats({0}), rats({3})});
    const RationalGF expected(P({1, 1 + 2 * p2, 2 + 2 * p2, 3 + p2}), P({1, -p2}) * P({1, 0, 1}) * P({1, 1}));
    CHECK(series_of_qp(r5) == expected);

    for (long q : {2L, 3L, 5L, 7L}) {
      const QuasiPolynomial rp(static_cast<std::uint32_t>(q), {rats({0}), rats({0}), {Rat(q + 1, 2)}});
      CHECK(series_of_qp(rp) == RationalGF(UniPoly::constant(Rat(q + 1, 2)), P({1, -q * q})));
    }
  }

  TEST_CASE("series_of_qp expands to the sequence and has the expected denominator") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
      const RandomQp r = random_qp(rng);
      const QuasiPolynomial qp(r.p, r.tables);
      const RationalGF g = series_of_qp(qp);
      const auto e = g.expand(50);
      for (unsigned n = 0; n < 50; ++n) CHECK(e[n] == eval_tables(r.tables, r.p, n));

      UniPoly bound = P({1});
      for (unsigned j = 0; j <= qp.degree(); ++j) {
        const std::size_t m = qp.period(j);
        bound = bound * (UniPoly::monomial(m) - UniPoly::constant(Rat(ipow(r.p, j * m)).inverse()));
      }
      CHECK(divides(g.den(), bound));
    }
  }

  TEST_CASE("qp_of_series") {
    CHECK(qp_of_series(RationalGF(P({1}), P({1, -1})), 0, 1, 2) == QuasiPolynomial(2, {rats({1})}));

    const long p2 = 4;
    const RationalGF r5(P({1, 1 + 2 * p2, 2 + 2 * p2, 3 + p2}), P({1, -p2}) * P({1, 0, 1}) * P({1, 1}));
    const QuasiPolynomial back = qp_of_series(r5, 2, 4, 2);
    CHECK(back.table(2) == rats({3}));
    CHECK(back.table(1) == rats({0}));
    // a_0(n) = (-v^2 + 5 v - 4)/2 with v = (2^n - 1) mod 5
    for (unsigned n = 0; n < 4; ++n) {
      const long v = ((1L << n) - 1) % 5;
      CHECK(back.table(0)[n] == Rat(-v * v + 5 * v - 4, 2));
    }

    CHECK_THROWS_AS(qp_of_series(RationalGF(P({1}), P({1, -3})), 0, 1, 2), DomainError);
    CHECK_THROWS_AS(qp_of_series(RationalGF(P({0, 0, 1}), P({1, -1})), 0, 1, 2), DomainError);
  }

  TEST_CASE("round trip on random quasi-polynomials") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      const RandomQp r = random_qp(rng);
      const QuasiPolynomial qp(r.p, r.tables);
      std::size_t M = 1;
      for (const auto& t : r.tables) M = std::lcm(M, t.size());
      const QuasiPolynomial back = qp_of_series(series_of_qp(qp), r.d, M, r.p);
      for (unsigned n = 0; n <= (r.d + 2) * M; ++n) CHECK(back(n) == eval_tables(r.tables, r.p, n));
      CHECK(back == qp);
    }
  }

  TEST_CASE("multiplicity is the mean of the leading table") {
    const QuasiPolynomial q(3, {rats({0}), rats({2, 4})});
    CHECK(multiplicity_from_series(series_of_qp(q), 1, 3) == Rat(3));
    CHECK(multiplicity_from_series(RationalGF(P({1}), P({1, -1})), 1, 2) == Rat(0));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const RandomQp r = random_qp(rng);
      const auto& lead = r.tables.back();
      Rat mean;
      for (const auto& x : lead) mean += x;
      mean = mean / Rat(static_cast<long>(lead.size()));
      CHECK(multiplicity_from_series(series_of_qp(QuasiPolynomial(r.p, r.tables)), r.d, r.p) == mean);
    }
  }

  TEST_CASE("rnc_hk") {
    CHECK(rnc_hk(3, 2, 2) == Rat(31));
    CHECK(rnc_hk(7, 2, 1) == Rat(16));
    CHECK(rnc_hk(5, 5, 1) == Rat(75));
    for (unsigned g : {3u, 5u, 7u}) CHECK(rnc_hk(g, 2, 0) == Rat(1));
    for (long g = 2; g <= 9; ++g) {
      for (long p : {2L, 3L, 5L, 7L}) {
        for (unsigned n = 0; n <= 5; ++n) {
          CHECK(rnc_hk(static_cast<unsigned>(g), static_cast<std::uint32_t>(p), n) == Rat(rnc_direct(g, p, n)));
        }
      }
    }
    CHECK_THROWS_AS(rnc_hk(1, 2, 1), DomainError);
  }

  TEST_CASE("R_p from n = 1 on is a polynomial in p^n") {
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      std::vector<Rat> e;
      for (unsigned n = 0; n <= 4; ++n) e.push_back(rnc_hk(p, p, n));
      const auto fit = fit_sequence(e, p, 2, 1, 1);
      REQUIRE(fit);
      CHECK(fit->start == 1);
      CHECK(fit->qp.table(2) == std::vector<Rat>{Rat(p + 1, 2)});
      CHECK(fit->qp.table(0) == rats({0}));
      CHECK(multiplicity_from_series(fit->gf, 2, p) == Rat(p + 1, 2));
    }
  }

  TEST_CASE("fit_sequence") {
    const auto fit = fit_sequence(rats({1, 4, 12, 28, 60}), 2, 1, 1, 2);
    REQUIRE(fit);
    CHECK(fit->start == 1);
    CHECK(fit->qp.table(1) == rats({4}));
    CHECK(fit->qp.table(0) == rats({-4}));
    CHECK(fit->gf.expand(5) == rats({1, 4, 12, 28, 60}));
    CHECK(multiplicity_from_series(fit->gf, 1, 2) == Rat(4));

    CHECK_FALSE(fit_sequence(rats({1, 4, 12, 28, 60}), 2, 1, 1, 0));
    CHECK_FALSE(fit_sequence(rats({1, 2, 3, 5, 8, 13}), 2, 1, 1, 2));
  }

  TEST_CASE("detect_recurrence") {
    for (long p : {2L, 3L, 7L}) {
      std::vector<Rat> geo;
      for (unsigned n = 0; n < 12; ++n) geo.emplace_back(ipow(static_cast<unsigned long>(p), n));
      const auto c = detect_recurrence(geo, 3, default_max_start(geo.size(), 3));
      REQUIRE(c);
      CHECK(c->order == 1);
      CHECK(c->coefficients == std::vector<Rat>{Rat(p)});
      CHECK(c->start == 0);
      CHECK(gf_of_certified(geo, *c) == RationalGF(P({1}), P({1, -p})));
    }

    // 2*4^n - 1 for even n, 2*4^n for odd n
    std::vector<Rat> r3;
    for (unsigned n = 0; n < 14; ++n) r3.emplace_back(2 * (1L << (2 * n)) - (n % 2 == 0 ? 1 : 0));
    for (unsigned n = 0; n < 14; ++n) CHECK(r3[n] == rnc_hk(3, 2, n));
    const auto c = detect_recurrence(r3, 4, default_max_start(r3.size(), 4));
    REQUIRE(c);
    CHECK(c->order == 3);
    CHECK(c->coefficients == rats({4, 1, -4}));
    CHECK(c->start == 0);
    CHECK(c->holds_on(r3));
    const RationalGF g = gf_of_certified(r3, *c);
    const RationalGF by_hand =
        RationalGF(P({2}), P({1, -4})) - RationalGF(P({1}), P({1, 0, -1}));
    CHECK(g == by_hand);
    CHECK(g == RationalGF(P({1, 4, -2}), P({1, -4}) * P({1, 0, -1})));
    CHECK(g == series_of_qp(QuasiPolynomial(2, {rats({-1, 0}), rats({0}), rats({2})})));

    CHECK(gf_of_certified(rats({1, 1, 1, 1}), RecurrenceCertificate{1, rats({1}), 0, 4}) ==
          RationalGF(P({1}), P({1, -1})));
    CHECK(gf_of_certified(rats({1, 3, 9, 27}), RecurrenceCertificate{1, rats({3}), 0, 4}) ==
          RationalGF(P({1}), P({1, -3})));
    CHECK_THROWS_AS(gf_of_certified(rats({1, 3, 9, 28}), RecurrenceCertificate{1, rats({3}), 0, 4}), DomainError);
    CHECK_THROWS_AS(detect_recurrence(rats({1, 2, 3}), 2, 0), DomainError);
  }

  TEST_CASE("perfect-square indicator has no short recurrence") {
    std::vector<Rat> sq(200);
    for (unsigned k = 0; k * k < 200; ++k) sq[k * k] = Rat(1);
    CHECK_FALSE(detect_recurrence(sq, 10, default_max_start(sq.size(), 10)));
  }

  TEST_CASE("certificates are sound and reconstruct the whole prefix") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const RandomQp r = random_qp(rng);
      std::vector<Rat> e;
      for (unsigned n = 0; n < 40; ++n) e.push_back(eval_tables(r.tables, r.p, n));
      const unsigned max_order = 12;
      const auto c = detect_recurrence(e, max_order, default_max_start(e.size(), max_order));
      if (!c) continue;
      CHECK(c->holds_on(e));
      CHECK(gf_of_certified(e, *c).expand(e.size()) == e);
    }
  }

  TEST_CASE("recurrences with a late start") {
    // 5, then 2^n from n = 1 on
    const auto seq = rats({5, 2, 4, 8, 16, 32, 64, 128});
    const auto c = detect_recurrence(seq, 2, default_max_start(seq.size(), 2));
    REQUIRE(c);
    CHECK(c->order == 1);
    CHECK(c->start == 1);
    CHECK(gf_of_certified(seq, *c).expand(8) == seq);
  }

  TEST_CASE("complement series") {
    // 0, then 8^n - 1 for n >= 1: the complement is 1/(1 - z).
    const RationalGF g = RationalGF(P({1}), P({1, -8})) - RationalGF(P({1}), P({1, -1}));
    CHECK(complement_series(g, 2, 3) == RationalGF(P({1}), P({1, -1})));
  }
}
