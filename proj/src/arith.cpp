#include "burgess/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "burgess/constants.hpp"

namespace burgess::arith {
namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    out.reserve(78'498);
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i)
        composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d,
                          int r) {
  a %= n;
  if (a == 0) return false;
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant with deterministic start values; n odd composite.
std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_factors(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t g = pollard_rho(n);
  collect_factors(g, out);
  collect_factors(n / g, out);
}

std::uint64_t checked_pow2(int e) {
  return std::uint64_t{1} << e;
}

}  // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Witness set that is exact for every n < 2^64.
  for (std::uint64_t a :
       {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd(a, b) * b;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  if (n > kMaxInput)
    throw std::domain_error("factorize: n exceeds 2^63 - 1");

  Factorization f;
  f.n = n;
  std::uint64_t rest = n;
  for (std::uint32_t p : trial_primes()) {
    if (std::uint64_t{p} * p > rest) break;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (rest > 1) {
    std::vector<std::uint64_t> large;
    collect_factors(rest, large);
    std::sort(large.begin(), large.end());
    for (std::uint64_t p : large) {
      if (!f.factors.empty() && f.factors.back().prime == p)
        ++f.factors.back().exponent;
      else
        f.factors.push_back({p, 1});
    }
  }
  return f;
}

ArithProfile profile(const Factorization& f) {
  ArithProfile p{f.n, static_cast<int>(f.factors.size()), 1, 1, 1};
  for (const auto& [prime, e] : f.factors) {
    p.d *= static_cast<std::uint64_t>(e + 1);
    std::uint64_t pe1 = 1;
    for (int i = 1; i < e; ++i) pe1 *= prime;
    p.phi *= pe1 * (prime - 1);
    p.mu = (e >= 2) ? 0 : -p.mu;
  }
  return p;
}

ArithProfile profile(std::uint64_t n) { return profile(factorize(n)); }

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [prime, e] : f.factors) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long double CoprimeCount::error() const {
  return static_cast<long double>(error_numerator) /
         static_cast<long double>(q);
}

bool CoprimeCount::error_within_bound() const {
  // |num| / q < 2^(omega-1)  <=>  2|num| < 2^omega * q
  const __int128 mag = error_numerator < 0 ? -error_numerator : error_numerator;
  const __int128 rhs = static_cast<__int128>(checked_pow2(omega)) * q;
  return 2 * mag < rhs;
}

CoprimeCount coprime_count(std::uint64_t A, const Factorization& qf) {
  const std::uint64_t q = qf.n;
  if (A < 1 || A > q)
    throw std::domain_error("coprime_count: requires 1 <= A <= q (A=" +
                            std::to_string(A) + ", q=" + std::to_string(q) +
                            ")");
  const auto prof = profile(qf);
  const std::size_t k = qf.factors.size();
  __int128 count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::uint64_t d = 1;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        d *= qf.factors[i].prime;
        ++bits;
      }
    }
    const __int128 term = A / d;
    count += (bits % 2 == 0) ? term : -term;
  }
  CoprimeCount out{};
  out.A = A;
  out.q = q;
  out.count = static_cast<std::uint64_t>(count);
  out.phi = prof.phi;
  out.omega = prof.omega;
  out.error_numerator = count * static_cast<__int128>(q) -
                        static_cast<__int128>(A) * prof.phi;
  return out;
}

CoprimeCount coprime_count(std::uint64_t A, std::uint64_t q) {
  if (q == 0) throw std::domain_error("coprime_count: q must be positive");
  return coprime_count(A, factorize(q));
}

AppendixReport check_appendix_bounds(const ArithProfile& p) {
  if (p.n < 3)
    throw std::domain_error("check_appendix_bounds: requires n >= 3");
  using constants::kDivisorExponent;
  using constants::kEulerGamma;
  using constants::kOmegaCoefficient;
  using constants::kPhiShift;

  const long double n = static_cast<long double>(p.n);
  const long double log_n = std::log(n);
  const long double ll = std::log(log_n);

  AppendixReport r{};
  r.n = p.n;

  const long double phi_floor =
      n / (std::exp(kEulerGamma) * ll + kPhiShift / ll);
  r.phi_lower = {static_cast<long double>(p.phi) > phi_floor,
                 static_cast<double>(phi_floor), static_cast<double>(p.phi),
                 static_cast<double>(p.phi - phi_floor)};

  const long double log_d_ceiling = kDivisorExponent * log_n / ll;
  const long double d_ceiling = std::exp(log_d_ceiling);
  r.divisor_upper = {
      std::log(static_cast<long double>(p.d)) <= log_d_ceiling,
      static_cast<double>(d_ceiling), static_cast<double>(p.d),
      static_cast<double>(d_ceiling - p.d)};

  const long double omega_ceiling =
      log_n / ll + kOmegaCoefficient * log_n / (ll * ll);
  r.omega_upper = {static_cast<long double>(p.omega) <= omega_ceiling,
                   static_cast<double>(omega_ceiling),
                   static_cast<double>(p.omega),
                   static_cast<double>(omega_ceiling - p.omega)};
  return r;
}

AppendixReport check_appendix_bounds(std::uint64_t n) {
  if (n < 3)
    throw std::domain_error("check_appendix_bounds: requires n >= 3");
  return check_appendix_bounds(profile(n));
}

ProfileSieve::ProfileSieve(std::uint32_t limit)
    : limit_(limit), spf_(std::size_t{limit} + 1, 0) {
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = i;
    for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i)
      if (spf_[j] == 0) spf_[j] = i;
  }
}

Factorization ProfileSieve::factorize(std::uint32_t n) const {
  if (n == 0 || n > limit_)
    throw std::domain_error("ProfileSieve: n outside sieve range");
  Factorization f;
  f.n = n;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

ArithProfile ProfileSieve::profile(std::uint32_t n) const {
  return arith::profile(factorize(n));
}

}  // namespace burgess::arith
