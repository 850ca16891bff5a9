#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "burgess/arith.hpp"
#include "burgess/rng.hpp"
#include "oracles.hpp"

using namespace burgess::arith;

TEST_CASE("factorize small values") {
  CHECK(factorize(1).factors.empty());
  const auto f12 = factorize(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0] == PrimePower{2, 2});
  CHECK(f12.factors[1] == PrimePower{3, 1});
  CHECK(f12.n == 12);
}

TEST_CASE("factorize 2^61 - 1 is prime") {
  const std::uint64_t m61 = (std::uint64_t{1} << 61) - 1;
  const auto f = factorize(m61);
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0] == PrimePower{m61, 1});
}

TEST_CASE("factorize large composites via rho") {
  const std::uint64_t p = 1000000007, q = 998244353;
  const auto f = factorize(p * q);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{q, 1});
  CHECK(f.factors[1] == PrimePower{p, 1});

  // Square of a prime above the trial-division limit.
  const std::uint64_t r = 1000003;
  const auto g = factorize(r * r * 6);
  REQUIRE(g.factors.size() == 3);
  CHECK(g.factors[2] == PrimePower{r, 2});

  CHECK(factorize(kMaxInput).n == kMaxInput);
}

TEST_CASE("factorize rejects 0 and values above 2^63 - 1") {
  CHECK_THROWS_AS(factorize(0), std::domain_error);
  CHECK_THROWS_AS(factorize(kMaxInput + 1), std::domain_error);
}

TEST_CASE("factorization invariants on random inputs") {
  burgess::SplitMix64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = rng.uniform(1, kMaxInput);
    const auto f = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t prev = 1;
    for (const auto& pp : f.factors) {
      CHECK(pp.prime > prev);
      CHECK(is_prime(pp.prime));
      CHECK(pp.exponent >= 1);
      for (int e = 0; e < pp.exponent; ++e) prod *= pp.prime;
      prev = pp.prime;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("is_prime agrees with trial division below 200000") {
  for (std::uint64_t n = 0; n < 200000; ++n)
    REQUIRE_MESSAGE(is_prime(n) == oracle::is_prime(n), "n = " << n);
}

TEST_CASE("is_prime on strong pseudoprimes and known primes") {
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(3215031751ULL));         // spsp to bases 2,3,5,7
  CHECK_FALSE(is_prime(3825123056546413051ULL));  // spsp to first 9 primes
  CHECK(is_prime(18446744073709551557ULL));     // largest 64-bit prime
  CHECK(is_prime(4611686018427387847ULL));
}

TEST_CASE("profile examples") {
  const auto p1 = profile(1);
  CHECK(p1.omega == 0);
  CHECK(p1.d == 1);
  CHECK(p1.phi == 1);
  CHECK(p1.mu == 1);
  const auto p10 = profile(10);
  CHECK(p10.omega == 2);
  CHECK(p10.d == 4);
  CHECK(p10.phi == 4);
  CHECK(p10.mu == 1);
  const auto p360 = profile(360);
  CHECK(p360.omega == 3);
  CHECK(p360.d == 24);
  CHECK(p360.phi == 96);
  CHECK(p360.mu == 0);
}

TEST_CASE("profile matches enumeration for n <= 10^4") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const auto p = profile(n);
    REQUIRE(p.d == oracle::divisors(n).size());
    REQUIRE(p.phi == oracle::phi(n));
    REQUIRE(p.mu == oracle::mu(n));
    REQUIRE(p.omega == static_cast<int>(oracle::factor(n).size()));
    REQUIRE((std::uint64_t{1} << p.omega) <= p.d);
  }
}

TEST_CASE("omega oracle spot check") {
  for (std::uint64_t n : {1, 2, 30, 210, 1024, 9699690 / 19})
    CHECK(profile(n).omega == oracle::omega(n));
}

TEST_CASE("multiplicativity on random coprime pairs") {
  burgess::SplitMix64 rng(11);
  int checked = 0;
  while (checked < 2000) {
    const std::uint64_t m = rng.uniform(1, 1000000);
    const std::uint64_t n = rng.uniform(1, 1000000);
    if (std::gcd(m, n) != 1) continue;
    const auto pm = profile(m), pn = profile(n), pmn = profile(m * n);
    CHECK(pmn.d == pm.d * pn.d);
    CHECK(pmn.phi == pm.phi * pn.phi);
    CHECK(pmn.omega == pm.omega + pn.omega);
    CHECK(pmn.mu == pm.mu * pn.mu);
    ++checked;
  }
}

TEST_CASE("divisors are sorted and complete") {
  const auto d = divisors(factorize(360));
  CHECK(d == oracle::divisors(360));
  CHECK(divisors(factorize(1)) == std::vector<std::uint64_t>{1});
}

TEST_CASE("ProfileSieve agrees with profile") {
  const ProfileSieve sieve(20000);
  for (std::uint32_t n = 1; n <= 20000; ++n) {
    const auto a = sieve.profile(n);
    const auto b = profile(n);
    REQUIRE(a.omega == b.omega);
    REQUIRE(a.d == b.d);
    REQUIRE(a.phi == b.phi);
    REQUIRE(a.mu == b.mu);
    REQUIRE(sieve.factorize(n).factors == factorize(n).factors);
  }
}

TEST_CASE("coprime_count examples") {
  const auto c = coprime_count(4, 6);
  CHECK(c.count == 1);
  CHECK(c.error() == doctest::Approx(-1.0 / 3.0));
  CHECK(c.error_numerator == -2);  // 1*6 - 4*2
  CHECK(c.error_within_bound());

  for (std::uint64_t q : {1, 2, 12, 97, 360, 2310}) {
    const auto full = coprime_count(q, q);
    CHECK(full.count == profile(q).phi);
    CHECK(full.error_numerator == 0);
  }

  const auto h = coprime_count(1, 2);
  CHECK(h.count == 1);
  CHECK(h.error() == doctest::Approx(0.5));
  CHECK(h.error_within_bound());
}

TEST_CASE("coprime_count domain") {
  CHECK_THROWS_AS(coprime_count(7, 6), std::domain_error);
  CHECK_THROWS_AS(coprime_count(0, 6), std::domain_error);
  CHECK_THROWS_AS(coprime_count(1, 0), std::domain_error);
}

TEST_CASE("coprime_count matches direct counting") {
  for (std::uint64_t q = 1; q <= 400; ++q)
    for (std::uint64_t A = 1; A <= q; ++A) {
      const auto c = coprime_count(A, q);
      REQUIRE(c.count == oracle::coprime_count(A, q));
      const __int128 num = static_cast<__int128>(c.count) * q -
                           static_cast<__int128>(A) * oracle::phi(q);
      REQUIRE(c.error_numerator == num);
    }
}

TEST_CASE("error bound is tight enough to fail when violated") {
  // The integer test must reject |E| = 2^(omega-1) exactly: build the
  // boundary by hand.
  CoprimeCount c{};
  c.q = 6;
  c.omega = 2;
  c.error_numerator = 12;  // E = 2 = 2^(2-1)
  CHECK_FALSE(c.error_within_bound());
  c.error_numerator = 11;
  CHECK(c.error_within_bound());
}

TEST_CASE("appendix bounds: examples") {
  const auto r3 = check_appendix_bounds(3);
  CHECK(r3.phi_lower.holds);
  const double ll3 = std::log(std::log(3.0));
  const double exp_gamma = std::exp(0.57721566490153286);
  const double floor3 = 3.0 / (exp_gamma * ll3 + 3.0 / ll3);
  CHECK(r3.phi_lower.bound == doctest::Approx(floor3).epsilon(1e-12));
  CHECK(floor3 == doctest::Approx(0.0936).epsilon(1e-3));
  CHECK(r3.phi_lower.slack > 0);

  const auto r4 = check_appendix_bounds(4);
  CHECK(r4.divisor_upper.holds);
  CHECK(r4.divisor_upper.actual == 3);
  CHECK(r4.divisor_upper.bound ==
        doctest::Approx(std::pow(4.0, 1.066 / std::log(std::log(4.0)))));

  const auto r6 = check_appendix_bounds(6);
  CHECK(r6.omega_upper.holds);
  const double l6 = std::log(6.0), ll6 = std::log(l6);
  CHECK(r6.omega_upper.bound ==
        doctest::Approx(l6 / ll6 + 1.45743 * l6 / (ll6 * ll6)));
}

TEST_CASE("appendix bounds: domain and slack sign") {
  CHECK_THROWS_AS(check_appendix_bounds(2), std::domain_error);
  CHECK_THROWS_AS(check_appendix_bounds(0), std::domain_error);
  for (std::uint64_t n = 3; n < 5000; ++n) {
    const auto r = check_appendix_bounds(n);
    REQUIRE(r.all_hold());
    REQUIRE(r.phi_lower.slack > 0);
    REQUIRE(r.divisor_upper.slack >= 0);
    REQUIRE(r.omega_upper.slack >= 0);
  }
}
