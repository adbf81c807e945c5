#include <doctest.h>

#include <random>

#include "hkfs/cyclo_cancel.hpp"
#include "hkfs/error.hpp"
#include "hkfs/linalg_q.hpp"
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

CancellationInput random_input(std::mt19937_64& rng) {
  static const std::uint32_t primes[] = {2, 3, 5};
  CancellationInput inp;
  inp.p = primes[rng() % 3];
  inp.d = 1 + static_cast<unsigned>(rng() % 3);
  do {
    inp.a_d = oracle::random_rat(rng);
  } while (inp.a_d.is_zero());
  inp.a0.resize(1 + rng() % 8);
  for (auto& x : inp.a0) x = oracle::random_rat(rng);
  return inp;
}

unsigned totient(unsigned M) {
  unsigned c = 0;
  for (unsigned k = 1; k <= M; ++k) c += std::gcd(k, M) == 1 ? 1 : 0;
  return c;
}

}  // namespace

TEST_SUITE("cyclo_cancel") {
  TEST_CASE("build_pq") {
    for (long p : {2L, 3L}) {
      const Rat c(7, 3);
      const PQ pq = build_pq({static_cast<std::uint32_t>(p), 1, Rat(1), {c}});
      CHECK(pq.P == UniPoly{Rat(1) + c, Rat(-1) - Rat(p) * c});
      CHECK(pq.Q == P({1, -p}) * P({1, -1}));
    }

    const long p = 19, p2 = p * p;  // 19 = 4 mod 5
    std::vector<Rat> a0;
    for (unsigned n = 0; n < 2; ++n) a0.push_back(rnc_hk(5, p, n) - Rat(3) * Rat(ipow(p, 2 * n)));
    CHECK(a0 == rats({-2, 1}));
    const PQ r5 = build_pq({static_cast<std::uint32_t>(p), 2, Rat(3), a0});
    CHECK(r5.P == P({1, 1 + 2 * p2, -3 - p2}));

    CHECK(build_pq({3, 1, Rat(1), rats({1, -1})}).P.eval(Rat(1)).is_zero());
    CHECK_THROWS_AS(build_pq({4, 1, Rat(1), rats({1})}), DomainError);
    CHECK_THROWS_AS(build_pq({2, 0, Rat(1), rats({1})}), DomainError);
    CHECK_THROWS_AS(build_pq({2, 1, Rat(0), rats({1})}), DomainError);
    CHECK_THROWS_AS(build_pq({2, 1, Rat(1), {}}), DomainError);
  }

  TEST_CASE("P/Q re-expands to the sequence") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
      const CancellationInput inp = random_input(rng);
      const PQ pq = build_pq(inp);
      const auto e = RationalGF(pq.P, pq.Q).expand(40);
      for (unsigned n = 0; n < 40; ++n) CHECK(e[n] == inp.term(n));
    }
  }

  TEST_CASE("1/p^d is never a root of P") {
    CHECK(check_pd_not_root({2, 1, Rat(1), {Rat(5)}}));
    CHECK(check_pd_not_root({19, 2, Rat(3), rats({-2, 1})}));
    CHECK(check_pd_not_root({3, 1, Rat(1), rats({1, -1})}));
    const CancellationInput r5{2, 2, Rat(3), rats({-2, 0, 1, 1})};
    CHECK(check_pd_not_root(r5));
    // P(1/4) times (1 - 4z) removed: the residue of the series is a_d, not 0
    const PQ pq = build_pq(r5);
    CHECK(pq.P.eval(Rat(1, 4)) == Rat(3) * (Rat(1) - Rat(1, 256)));

    std::mt19937_64 rng(1000);
    for (int trial = 0; trial < 300; ++trial) CHECK(check_pd_not_root(random_input(rng)));
  }

  TEST_CASE("sm_system") {
    const SMSystem one = sm_system(1, 2, 1);
    REQUIRE(one.matrix.size() == 1);
    CHECK(one.matrix[0] == rats({-1}));
    CHECK(sm_system(1, 3, 2).matrix[0] == rats({1 - 9}));

    // M = 4: Phi_4 = z^2 + 1, columns are z^k - 2 z^(k+1) reduced mod z^2 + 1.
    const SMSystem four = sm_system(4, 2, 1);
    REQUIRE(four.matrix.size() == 2);
    CHECK(four.matrix[0] == rats({1, 2, -1, -2}));
    CHECK(four.matrix[1] == rats({-2, 1, 2, -1}));
    CHECK(four.cyclotomic_coeffs == rats({-1, 0}));
    CHECK(rank(four.matrix) == 2);

    CHECK(rank(sm_system(6, 2, 2).matrix) == 2);
    CHECK(sm_dimension(4, 2, 1) == 2);
    CHECK(sm_dimension(6, 3, 1) == 4);
    CHECK(sm_dimension(1, 5, 2) == 0);
  }

  TEST_CASE("rank theorem at desk scale") {
    for (unsigned M = 1; M <= 30; ++M) {
      for (std::uint32_t p : {2u, 3u, 5u}) {
        for (unsigned d : {1u, 2u}) CHECK(sm_dimension(M, p, d) == M - totient(M));
      }
    }
  }

  TEST_CASE("V_l") {
    CHECK(vl_basis(4, 2) == std::vector<std::vector<Rat>>{rats({1, 0, 1, 0}), rats({0, 1, 0, 1})});
    CHECK(vl_basis(6, 1) == std::vector<std::vector<Rat>>{rats({1, 1, 1, 1, 1, 1})});
    CHECK(vl_basis(6, 3).size() == 3);
    CHECK_THROWS_AS(vl_basis(6, 6), DomainError);
    CHECK_THROWS_AS(vl_basis(6, 4), DomainError);

    for (unsigned M : {2u, 3u, 5u, 7u, 11u, 13u}) CHECK(vl_sum_dimension(M) == 1);
    CHECK(vl_sum_dimension(6) == 2 + 3 - 1);
    CHECK(vl_sum_dimension(12) == 8);
    for (unsigned M = 2; M <= 30; ++M) {
      if (distinct_prime_factors(M) <= 2) CHECK(vl_sum_dimension(M) == M - totient(M));
    }
  }

  TEST_CASE("periodic tables lie in S_M") {
    for (unsigned M = 2; M <= 24; ++M) {
      const SMSystem sys = sm_system(M, 3, 1);
      for (unsigned l : divisors(M)) {
        if (l == M) continue;
        for (const auto& v : vl_basis(M, l)) {
          for (const auto& row : sys.matrix) {
            Rat acc;
            for (unsigned k = 0; k < M; ++k) acc += row[k] * v[k];
            CHECK(acc.is_zero());
          }
        }
      }
    }
  }

  TEST_CASE("question_check") {
    for (unsigned M : {9u, 15u}) {
      for (std::uint32_t p : {2u, 3u}) {
        const QuestionRecord q = question_check(M, p, 1);
        CHECK(q.containment_ok);
        CHECK(q.equal);
        CHECK_FALSE(q.observation_only);
      }
    }
    const QuestionRecord q30 = question_check(30, 2, 1);
    CHECK(q30.containment_ok);
    CHECK(q30.observation_only);
    CHECK(q30.sm_dim == 30 - totient(30));
    MESSAGE("M=30 observation: sm_dim=" << q30.sm_dim << " vl_dim=" << q30.vl_dim);
  }

  TEST_CASE("cancellation_analyze") {
    const long p2 = 4;
    const CancellationReport r5 = cancellation_analyze({2, 2, Rat(3), rats({-2, 0, 1, 1})});
    CHECK(r5.pd_root_check);
    CHECK(std::find(r5.dividing_cyclotomics.begin(), r5.dividing_cyclotomics.end(), 1u) !=
          r5.dividing_cyclotomics.end());
    CHECK(r5.simplified.den() == RationalGF(P({1}), P({1, -p2}) * P({1, 0, 1}) * P({1, 1})).den());
    CHECK(r5.simplified == RationalGF(P({1, 1 + 2 * p2, 2 + 2 * p2, 3 + p2}), P({1, -p2}) * P({1, 0, 1}) * P({1, 1})));

    const CancellationReport sum = cancellation_analyze({2, 2, Rat(6), rats({-4, 0, 2, -3, -1, 3})});
    CHECK(sum.dividing_cyclotomics == std::vector<unsigned>{6});
    CHECK(sum.simplified == RationalGF(P({-2, -18, -18, 11, 18}), P({1, -4}) * P({-1, 1}) * P({1, 1}) * P({1, 1, 1})));

    const CancellationReport flat = cancellation_analyze({3, 1, Rat(2), rats({5, 5, 5, 5, 5, 5})});
    CHECK(flat.dividing_cyclotomics == std::vector<unsigned>{2, 3, 6});
    CHECK(flat.simplified.den() == RationalGF(P({1}), P({1, -3}) * P({1, -1})).den());
  }

  TEST_CASE("simplified series expands to the sequence") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 60; ++trial) {
      const CancellationInput inp = random_input(rng);
      const auto e = cancellation_analyze(inp).simplified.expand(40);
      for (unsigned n = 0; n < 40; ++n) CHECK(e[n] == inp.term(n));
    }
  }

  TEST_CASE("Phi_M | P exactly when the table solves the S_M system") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      CancellationInput inp = random_input(rng);
      const unsigned M = static_cast<unsigned>(inp.a0.size());
      if (trial % 2 == 0 && M > 1) {
        // force the table into a proper-period subspace half the time
        const auto divs = divisors(M);
        const unsigned l = divs[rng() % (divs.size() - 1)];
        for (unsigned i = l; i < M; ++i) inp.a0[i] = inp.a0[i % l];
      }
      const SMSystem sys = sm_system(M, inp.p, inp.d);
      bool in_kernel = true;
      for (const auto& row : sys.matrix) {
        Rat acc;
        for (unsigned k = 0; k < M; ++k) acc += row[k] * inp.a0[k];
        in_kernel = in_kernel && acc.is_zero();
      }
      CHECK(divides(cyclotomic(M), build_pq(inp).P) == in_kernel);
    }
  }
}
