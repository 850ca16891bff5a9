#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "burgess/arith.hpp"
#include "burgess/bounds.hpp"
#include "burgess/constants.hpp"
#include "burgess/precise.hpp"
#include "burgess/rng.hpp"

using namespace burgess;
using namespace burgess::bounds;

namespace {

// Independent double-precision evaluation of the theorem's right side.
double theorem_direct(double q, double N, int omega, double d, double ratio) {
  return std::sqrt(N) * std::pow(q, 3.0 / 16.0) * 9.07 *
         std::pow(std::log(q), 0.25) * std::pow(std::pow(2.0, omega) * d, 0.75) *
         std::sqrt(ratio);
}

const double kEulerGamma = 0.57721566490153286;

}  // namespace

TEST_CASE("40-digit constants match Boost's") {
  using P = Precise;
  const P tol("1e-39");
  CHECK(abs(precise::euler_gamma() - boost::math::constants::euler<P>()) < tol);
  CHECK(abs(precise::ln10() - boost::math::constants::ln_ten<P>()) < tol);
  CHECK(abs(precise::sqrt10() - sqrt(P(10))) < tol);
  CHECK(static_cast<double>(constants::kEulerGamma) == kEulerGamma);
  CHECK(static_cast<double>(constants::kSqrt10) == std::sqrt(10.0));
  CHECK(static_cast<double>(constants::kLn10) == std::log(10.0));
}

TEST_CASE("classic_bounds examples") {
  const auto a = classic_bounds(16.0, 8.0);
  CHECK(a.trivial.log() == 8.0);
  CHECK(a.polya_vinogradov.log() == doctest::Approx(8.0 + std::log(16.0)));
  CHECK(classic_bounds(5.0, 0.0).trivial.value() == 1.0);

  const auto b = classic_bounds(std::log(1e6), std::log(1e3));
  CHECK(b.polya_vinogradov.value() == doctest::Approx(1000.0 * std::log(1e6)));
  CHECK((b.polya_vinogradov / b.trivial).value() == doctest::Approx(13.8155).epsilon(1e-4));

  CHECK_THROWS_AS(classic_bounds(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(classic_bounds(1.0, -1.0), std::domain_error);
}

TEST_CASE("theorem bound at q = 997") {
  const double lq = std::log(997.0), ln = std::log(74.0);
  const auto r = burgess_bound_theorem(lq, ln, 1, 2, 997.0 / 996.0,
                                       Hypothesis::relaxed);
  CHECK_FALSE(r.in_hypothesis);
  CHECK(r.name == "theorem");
  CHECK(r.value.value() ==
        doctest::Approx(theorem_direct(997, 74, 1, 2, 997.0 / 996.0)).epsilon(1e-12));
  CHECK(r.inputs.log_q == lq);
  CHECK(r.inputs.log_n == ln);
  CHECK(r.inputs.omega == 1);
  CHECK(r.inputs.d == 2);
  CHECK(r.inputs.phi_ratio == 997.0 / 996.0);

  CHECK_THROWS_AS(burgess_bound_theorem(lq, ln, 1, 2, 997.0 / 996.0),
                  std::domain_error);

  auto cmp = r;
  cmp.compare_with(LogReal::from_value(16.71));
  REQUIRE(cmp.holds_vs);
  CHECK(cmp.holds_vs->holds);
  CHECK(cmp.holds_vs->log_ratio < 0);
}

TEST_CASE("theorem bound domain") {
  const double lq = std::log(997.0);
  CHECK_THROWS_AS(burgess_bound_theorem(lq, 0.625 * lq + 1e-6, 1, 2, 1.0,
                                        Hypothesis::relaxed),
                  std::domain_error);
  CHECK_NOTHROW(burgess_bound_theorem(lq, 0.625 * lq, 1, 2, 1.0,
                                      Hypothesis::relaxed));
  CHECK_THROWS_AS(burgess_bound_theorem(lq, 1.0, 1, 2, 0.99, Hypothesis::relaxed),
                  std::domain_error);
}

TEST_CASE("theorem bound at the threshold") {
  const double lq = std::exp(9.594);
  const auto r = burgess_bound_theorem(lq, 0.5 * lq, 40, 1ULL << 50, 12.0);
  CHECK(r.in_hypothesis);
  CHECK(std::isfinite(r.value.log()));
  const double expected = 0.5 * 0.5 * lq + 3.0 / 16.0 * lq + std::log(9.07) +
                          0.25 * std::log(lq) + 0.75 * (90 * std::log(2.0)) +
                          0.5 * std::log(12.0);
  CHECK(r.value.log() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("theorem bound agrees with direct doubles on desk inputs") {
  SplitMix64 rng(41);
  for (int k = 0; k < 5000; ++k) {
    const std::uint64_t q = rng.uniform(3, 1000000);
    const auto p = arith::profile(q);
    const double nmax = std::pow(static_cast<double>(q), 0.625);
    const double N = 1.0 + static_cast<double>(rng.uniform(1000000)) / 1e6 * (nmax - 1.0);
    const double ratio = static_cast<double>(q) / static_cast<double>(p.phi);
    const auto r = burgess_bound_theorem(std::log(static_cast<double>(q)),
                                         std::log(N), p.omega, p.d, ratio,
                                         Hypothesis::relaxed);
    REQUIRE(r.value.value() ==
            doctest::Approx(theorem_direct(static_cast<double>(q), N, p.omega,
                                           static_cast<double>(p.d), ratio))
                .epsilon(1e-10));
  }
}

TEST_CASE("theorem bound is monotone in each argument") {
  SplitMix64 rng(43);
  const auto relaxed = Hypothesis::relaxed;
  for (int k = 0; k < 3000; ++k) {
    const double lq = 1.0 + static_cast<double>(rng.uniform(100000)) / 1000.0;
    const double ln = static_cast<double>(rng.uniform(1000)) / 1000.0 * 0.6 * lq;
    const int omega = static_cast<int>(rng.uniform(0, 10));
    const std::uint64_t d = rng.uniform(1, 1000);
    const double ratio = 1.0 + static_cast<double>(rng.uniform(1000)) / 100.0;
    const auto base = burgess_bound_theorem(lq, ln, omega, d, ratio, relaxed).value;
    REQUIRE(base <= burgess_bound_theorem(lq, ln + 0.01 * lq, omega, d, ratio, relaxed).value);
    REQUIRE(base <= burgess_bound_theorem(lq, ln, omega + 1, d, ratio, relaxed).value);
    REQUIRE(base <= burgess_bound_theorem(lq, ln, omega, d + 1, ratio, relaxed).value);
    REQUIRE(base <= burgess_bound_theorem(lq, ln, omega, d, ratio + 0.5, relaxed).value);
  }
}

TEST_CASE("corollary dominates the theorem with the phi ceiling") {
  for (int k = 0; k <= 110; ++k) {
    const double t = 1.0 + 0.1 * k;
    const double lq = std::exp(t);
    const double ratio = std::exp(kEulerGamma) * t + 3.0 / t;
    for (double frac : {0.0, 0.25, 0.5, 0.625}) {
      const auto th = burgess_bound_theorem(lq, frac * lq, 2, 6, ratio,
                                            Hypothesis::relaxed);
      const auto co = burgess_bound_corollary(t, frac * lq, 2, 6,
                                              Hypothesis::relaxed);
      REQUIRE(co.value >= th.value);
      REQUIRE(co.in_hypothesis == (t >= 9.594));
    }
  }
}

TEST_CASE("corollary at the threshold") {
  const double t = 9.594, lq = std::exp(t);
  const auto r = burgess_bound_corollary(t, 0.5 * lq, 30, 1ULL << 40);
  CHECK(r.in_hypothesis);
  CHECK(std::isfinite(r.value.log()));
  CHECK(r.inputs.loglog_q == t);
  CHECK_FALSE(r.inputs.log_q.has_value());
  CHECK_THROWS_AS(burgess_bound_corollary(9.5, 1.0, 1, 2), std::domain_error);
}

TEST_CASE("lambda2_prime") {
  const double lq = std::log(997.0);
  const double direct = 3.3325 * std::pow(lq, 0.25) *
                        std::pow(996.0 / 997.0, -0.5) * std::pow(4.0, 0.75);
  const auto v = lambda2_prime(lq, 1, 2, 997.0 / 996.0);
  CHECK(v.value() == doctest::Approx(direct).epsilon(1e-14));
  CHECK(v.value() == doctest::Approx(15.286922481314253).epsilon(1e-14));
  CHECK_THROWS_AS(lambda2_prime(1.0, 1, 2, 1.0), std::domain_error);

  for (std::uint64_t q = 3; q <= 5000; ++q) {
    const auto p = arith::profile(q);
    const double ratio = static_cast<double>(q) / static_cast<double>(p.phi);
    REQUIRE(lambda2_prime(std::log(static_cast<double>(q)), p.omega, p.d, ratio) >=
            LogReal::one());
  }
}

TEST_CASE("size conditions at and below the threshold") {
  const auto at = check_q_conditions(9.594, 0.5);
  CHECK(at.ninth_root.holds);
  CHECK(at.ninth_root.log_margin() == doctest::Approx(198.68).epsilon(1e-4));
  CHECK(at.length.holds);
  CHECK(at.ceilings.holds);
  CHECK(at.density.holds);

  const auto low = check_q_conditions(2.0, 0.5);
  CHECK_FALSE(low.ninth_root.holds);
  CHECK(low.ninth_root.log_margin() == doctest::Approx(-3.662).epsilon(1e-3));

  // Ceilings and the exact-input form agree on length when the exact
  // inputs equal the ceilings' values.
  CHECK(at.length.log_lhs == at.ceilings.log_lhs);
  CHECK(at.length.log_rhs == doctest::Approx(at.ceilings.log_rhs).epsilon(1e-12));

  CHECK_FALSE(check_q_conditions(9.594, 0.6).density.holds);
  CHECK_THROWS_AS(check_q_conditions(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(check_q_conditions(9.594, 1.0), std::domain_error);
  CHECK_THROWS_AS(check_q_conditions(9.594, 0.0), std::domain_error);
}

TEST_CASE("ninth-root condition stays true once it holds") {
  bool seen = false;
  for (int k = 1000; k <= 12000; ++k) {
    const bool h = check_q_conditions(k / 1000.0, 0.5).ninth_root.holds;
    if (seen) REQUIRE(h);
    seen = seen || h;
  }
  CHECK(seen);
  for (int k = 0; k <= 240; ++k)
    REQUIRE(check_q_conditions(9.594 + 0.01 * k, 0.5).ninth_root.holds);
}

TEST_CASE("length condition with exact arithmetic") {
  // Small omega and q/phi close to 1 make the condition easier.
  const auto easy = check_q_conditions(4.0, 0.5, ExactArith{1, 1.01});
  const auto hard = check_q_conditions(4.0, 0.5, ExactArith{8, 5.0});
  CHECK(easy.length.log_margin() > hard.length.log_margin());
  const double lq = std::exp(4.0);
  CHECK(easy.length.log_lhs == doctest::Approx(lq / 8.0));
  CHECK(easy.length.log_rhs ==
        doctest::Approx(std::log(10.0 * (2.0 * 1.01 / (2 * 0.5) + 1.0))));
}

TEST_CASE("aq_ratio_floor") {
  CHECK(aq_ratio_floor(9.594).value() ==
        doctest::Approx(0.0287351297933578).epsilon(1e-13));
  CHECK_THROWS_AS(aq_ratio_floor(9.5), std::domain_error);
  CHECK_NOTHROW(aq_ratio_floor(2.0, Hypothesis::relaxed));
  LogReal prev = aq_ratio_floor(9.594);
  for (int k = 1; k <= 300; ++k) {
    const auto v = aq_ratio_floor(9.594 + 0.01 * k);
    REQUIRE(v < prev);
    prev = v;
  }
}

TEST_CASE("aq_ratio_floor desk cross-check") {
  // With A = floor(q^(3/8)/10) >= 1 the length condition with exact
  // inputs never holds below q = 10^8, so the literal cross-check has no
  // instances at q <= 3000; verify that, then check the inequality chain
  // A_q/A >= phi/(2q) >= floor directly wherever 2^(omega-1) <= phi A/(2q).
  std::uint64_t instances = 0;
  for (std::uint64_t q = 3; q <= 3000; ++q) {
    const auto p = arith::profile(q);
    const double ratio = static_cast<double>(q) / static_cast<double>(p.phi);
    const double t = std::log(std::log(static_cast<double>(q)));
    if (t > 0) {
      REQUIRE_FALSE(
          check_q_conditions(t, 0.5, ExactArith{p.omega, ratio}).length.holds);
    }
    const double half_density = 0.5 / ratio;
    const double floor =
        t > 0 ? aq_ratio_floor(t, Hypothesis::relaxed).value() : 0.0;
    REQUIRE(half_density >= floor);
    std::uint64_t count = 0;
    for (std::uint64_t A = 1; A <= q; ++A) {
      if (std::gcd(A, q) == 1) ++count;
      if (std::ldexp(1.0, p.omega - 1) > half_density * static_cast<double>(A))
        continue;
      ++instances;
      REQUIRE(static_cast<double>(count) / static_cast<double>(A) >= half_density);
    }
  }
  CHECK(instances > 1000000);
}

TEST_CASE("recursion_unroll: single step and closed form") {
  const double lam = 15.2869, lq = std::log(997.0), ln = std::log(74.0);
  const auto u = recursion_unroll(lam, lq, ln, 80);
  const double base = lam * std::sqrt(74.0) * std::pow(997.0, 3.0 / 16.0);
  CHECK(u.base.value() == doctest::Approx(base).epsilon(1e-14));
  CHECK(u.partials[0].value() == doctest::Approx(base + 74.0 / 5.0).epsilon(1e-14));

  const double r = 2.0 / std::sqrt(10.0);
  const double closed40 = base * (1.0 - std::pow(r, 41)) / (1.0 - r) +
                          74.0 / std::pow(5.0, 41);
  CHECK(u.partials[40].value() == doctest::Approx(closed40).epsilon(1e-12));
  CHECK(u.partials[80].value() == doctest::Approx(u.limit.value()).epsilon(1e-12));
  CHECK((u.limit / u.base).value() ==
        doctest::Approx(2.720759220056126).epsilon(1e-9));
  // At K = 40 the partial is still (2/sqrt10)^41 ~ 7e-9 short of the limit.
  CHECK(std::fabs((u.partials[40] / u.limit).value() - 1.0) > 1e-9);
  CHECK_THROWS_AS(recursion_unroll(0.0, lq, ln, 3), std::domain_error);
}

TEST_CASE("recursion_unroll: direction of each step") {
  // P_{K+1} - P_K = base r^(K+1) - (4/5) N / 5^(K+1): partials fall while
  // the tail term dominates and rise toward the limit afterwards.
  const double lam = 1.0, lq = 1.0, ln = 30.0;
  const auto u = recursion_unroll(lam, lq, ln, 60);
  const double base = u.base.value(), N = std::exp(ln);
  const double r = 2.0 / std::sqrt(10.0);
  int falls = 0, rises = 0;
  for (unsigned K = 0; K + 1 < u.partials.size(); ++K) {
    const double step = base * std::pow(r, K + 1) - 0.8 * N / std::pow(5.0, K + 1);
    if (std::fabs(step) < 1e-9 * u.partials[K].value()) continue;
    if (step < 0) {
      REQUIRE(u.partials[K + 1] <= u.partials[K]);
      ++falls;
    } else {
      REQUIRE(u.partials[K + 1] >= u.partials[K]);
      REQUIRE(u.partials[K + 1] <= u.limit);
      ++rises;
    }
  }
  CHECK(falls > 5);
  CHECK(rises > 5);
  CHECK(u.partials.back().value() == doctest::Approx(u.limit.value()).epsilon(1e-12));
}

TEST_CASE("constant chain") {
  const auto checks = constant_chain();
  REQUIRE(checks.size() == 5);
  for (const auto& c : checks) {
    CHECK_MESSAGE(c.holds, c.name);
    CHECK(c.lhs <= c.rhs);
  }
  CHECK(checks[0].lhs == doctest::Approx(9.06693010083704).epsilon(1e-13));
  CHECK(checks[1].lhs == doctest::Approx(12.1045340413715).epsilon(1e-13));
  CHECK(checks[2].lhs == doctest::Approx(1.68437845070066).epsilon(1e-13));
  CHECK(checks[3].lhs == doctest::Approx(3.33248102).epsilon(1e-8));
  CHECK(checks[4].lhs < 1e-25);
  CHECK(checks[0].detail.find("9.0669301008370413746") == 0);
}

TEST_CASE("threshold facts") {
  const auto facts = threshold_facts();
  REQUIRE(facts.size() == 6);
  for (const auto& f : facts) CHECK_MESSAGE(f.holds, f.name);
  CHECK(facts[0].name == "threshold_magnitude");
  CHECK(facts[0].detail.find("8.03103864475") != std::string::npos);
  CHECK(facts[0].detail.find("e6373") != std::string::npos);
  CHECK(facts[1].rhs == doctest::Approx(795.738096464).epsilon(1e-11));
  CHECK(facts[5].name == "ninth_root_condition_fails_at_2");
  CHECK(std::exp(9.594) / std::log(10.0) ==
        doctest::Approx(6373.9047717157).epsilon(1e-12));
}
