#pragma once

// Integer factorization and the multiplicative functions built on it:
// omega, d, phi, mu, coprime counting with its inclusion-exclusion error
// term, and the explicit lower/upper bounds for phi, d and omega that hold
// for every n >= 3.

#include <cstdint>
#include <vector>

namespace burgess::arith {

inline constexpr std::uint64_t kMaxInput = (std::uint64_t{1} << 63) - 1;

struct PrimePower {
  std::uint64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition of n, primes strictly increasing.
struct Factorization {
  std::uint64_t n = 1;
  std::vector<PrimePower> factors;
};

struct ArithProfile {
  std::uint64_t n;
  int omega;
  std::uint64_t d;
  std::uint64_t phi;
  int mu;
};

/// A_q = #{1 <= a <= A : gcd(a, q) = 1} together with the exact error
/// E = A_q - A*phi(q)/q, stored as the numerator A_q*q - A*phi(q) over q.
struct CoprimeCount {
  std::uint64_t A;
  std::uint64_t q;
  std::uint64_t count;
  std::uint64_t phi;
  int omega;
  __int128 error_numerator;

  long double error() const;
  /// |E| < 2^(omega(q)-1), decided in integer arithmetic.
  bool error_within_bound() const;
};

struct BoundCheck {
  bool holds;
  double bound;
  double actual;
  /// Positive exactly when the inequality holds with room to spare.
  double slack;
};

struct AppendixReport {
  std::uint64_t n;
  BoundCheck phi_lower;      // phi(n) > n / (e^gamma loglog n + 3/loglog n)
  BoundCheck divisor_upper;  // d(n) <= n^(1.066/loglog n)
  BoundCheck omega_upper;    // omega(n) <= L/LL + 1.45743 L/LL^2

  bool all_hold() const {
    return phi_lower.holds && divisor_upper.holds && omega_upper.holds;
  }
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Throws std::domain_error for n == 0 or n > 2^63 - 1.
Factorization factorize(std::uint64_t n);

ArithProfile profile(std::uint64_t n);
ArithProfile profile(const Factorization& f);

/// All positive divisors in increasing order.
std::vector<std::uint64_t> divisors(const Factorization& f);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Inclusion-exclusion over the squarefree divisors of q.
/// Throws std::domain_error unless 1 <= A <= q.
CoprimeCount coprime_count(std::uint64_t A, std::uint64_t q);
CoprimeCount coprime_count(std::uint64_t A, const Factorization& q);

/// Throws std::domain_error for n < 3.
AppendixReport check_appendix_bounds(std::uint64_t n);
AppendixReport check_appendix_bounds(const ArithProfile& p);

/// Smallest-prime-factor table for fast profiles of every n <= limit.
class ProfileSieve {
 public:
  explicit ProfileSieve(std::uint32_t limit);

  std::uint32_t limit() const { return limit_; }
  ArithProfile profile(std::uint32_t n) const;
  Factorization factorize(std::uint32_t n) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace burgess::arith
