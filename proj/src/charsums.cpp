#include "burgess/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace burgess::sums {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::uint64_t reduce(std::int64_t n, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  std::int64_t r = n % sq;
  if (r < 0) r += sq;
  return static_cast<std::uint64_t>(r);
}

// Prefix sums P[j] = chi(1) + ... + chi(j), j in [0, length).
struct PrefixSums {
  std::vector<double> re;
  std::vector<double> im;

  PrefixSums(const chars::PhaseTable& table, std::uint64_t length)
      : re(length, 0.0), im(length, 0.0) {
    const auto& values = table.values();
    const std::uint64_t q = table.modulus();
    double acc_re = 0.0, acc_im = 0.0;
    for (std::uint64_t j = 1; j < length; ++j) {
      const auto v = values[j % q];
      acc_re += v.real();
      acc_im += v.imag();
      re[j] = acc_re;
      im[j] = acc_im;
    }
  }
};

std::vector<double> squared_window_maxima(const PrefixSums& p, std::uint64_t q,
                                          std::uint64_t y) {
  std::vector<double> out(y, 0.0);
  const double* re = p.re.data();
  const double* im = p.im.data();
  for (std::uint64_t N = 1; N <= y; ++N) {
    double best = 0.0;
    for (std::uint64_t M = 0; M < q; ++M) {
      const double dr = re[M + N] - re[M];
      const double di = im[M + N] - im[M];
      const double v = dr * dr + di * di;
      best = v > best ? v : best;
    }
    out[N - 1] = best;
  }
  return out;
}

void require_primitive(const chars::DirichletCharacter& chi, const char* op) {
  if (!chi.primitive())
    throw std::domain_error(std::string(op) + ": character mod " +
                            std::to_string(chi.modulus()) +
                            " is not primitive (conductor " +
                            std::to_string(chi.conductor()) + ")");
}

}  // namespace

IntervalSum interval_sum(const chars::PhaseTable& table, std::int64_t M,
                         std::uint64_t N) {
  const std::uint64_t q = table.modulus();
  const auto& values = table.values();
  const std::uint64_t start = reduce(M + 1, q);

  std::complex<double> full_period{0.0, 0.0};
  const std::uint64_t periods = N / q;
  if (periods > 0) {
    for (const auto& v : values) full_period += v;
  }
  std::complex<double> partial{0.0, 0.0};
  std::uint64_t r = start;
  for (std::uint64_t i = 0; i < N % q; ++i) {
    partial += values[r];
    if (++r == q) r = 0;
  }
  const std::complex<double> total =
      full_period * static_cast<double>(periods) + partial;
  return {M, N, total, std::abs(total)};
}

IntervalSum interval_sum(const chars::DirichletCharacter& chi, std::int64_t M,
                         std::uint64_t N) {
  return interval_sum(chars::PhaseTable(chi), M, N);
}

std::vector<double> window_maxima(const chars::PhaseTable& table,
                                  std::uint64_t y) {
  const std::uint64_t q = table.modulus();
  const PrefixSums p(table, q + y);
  auto out = squared_window_maxima(p, q, y);
  for (auto& v : out) v = std::sqrt(v);
  return out;
}

MaxIntervalSum max_interval_sum(const chars::PhaseTable& table,
                                std::uint64_t y) {
  if (y == 0) throw std::domain_error("max_interval_sum: y must be >= 1");
  const std::uint64_t q = table.modulus();
  // A non-principal character sums to zero over a period, so longer
  // windows repeat shorter ones.
  const std::uint64_t span = table.order() > 1 ? std::min(y, q) : y;
  const PrefixSums p(table, q + span);
  const auto maxima = squared_window_maxima(p, q, span);
  const double best = *std::max_element(maxima.begin(), maxima.end());
  const double cutoff = best * (1.0 - 1e-12);

  for (std::uint64_t M = 0; M < q; ++M) {
    for (std::uint64_t N = 1; N <= span; ++N) {
      const double dr = p.re[M + N] - p.re[M];
      const double di = p.im[M + N] - p.im[M];
      if (dr * dr + di * di >= cutoff)
        return {std::sqrt(best), static_cast<std::int64_t>(M), N};
    }
  }
  throw std::logic_error("max_interval_sum: witness not found");
}

MaxIntervalSum max_interval_sum(const chars::DirichletCharacter& chi,
                                std::uint64_t y) {
  return max_interval_sum(chars::PhaseTable(chi), y);
}

double fourth_moment_rhs(std::uint64_t q, std::uint64_t B, int omega,
                         std::uint64_t d) {
  const long double b = static_cast<long double>(B);
  const long double qq = static_cast<long double>(q);
  const long double dd = static_cast<long double>(d);
  const long double eight_omega = std::pow(8.0L, omega);
  return static_cast<double>((7 * b * b - 6 * b) * qq +
                             4 * eight_omega * std::sqrt(qq) * b * b * b * b *
                                 dd * dd * dd);
}

FourthMomentReport fourth_moment(const chars::DirichletCharacter& chi,
                                 const chars::PhaseTable& table,
                                 const arith::ArithProfile& q_profile,
                                 std::uint64_t B) {
  require_primitive(chi, "fourth_moment");
  const std::uint64_t q = chi.modulus();
  if (B < 1 || B * B >= q)
    throw std::domain_error("fourth_moment: requires 1 <= B < sqrt(q) (B=" +
                            std::to_string(B) + ", q=" + std::to_string(q) +
                            ")");
  const auto& values = table.values();
  double lhs = 0.0;
  for (std::uint64_t l = 1; l <= q; ++l) {
    std::complex<double> s{0.0, 0.0};
    for (std::uint64_t b = 1; b <= B; ++b) s += values[(l + b) % q];
    const double n2 = std::norm(s);
    lhs += n2 * n2;
  }
  const double rhs = fourth_moment_rhs(q, B, q_profile.omega, q_profile.d);
  return {q, B, lhs, rhs, rhs - lhs};
}

FourthMomentReport fourth_moment(const chars::DirichletCharacter& chi,
                                 std::uint64_t B) {
  require_primitive(chi, "fourth_moment");
  return fourth_moment(chi, chars::PhaseTable(chi),
                       arith::profile(chi.group().factorization()), B);
}

bool admissible_tuple(std::uint64_t q, const std::array<std::int64_t, 4>& m) {
  std::array<std::uint64_t, 4> r{};
  for (int i = 0; i < 4; ++i) r[i] = reduce(m[i], q);
  std::sort(r.begin(), r.end());
  return std::unique(r.begin(), r.end()) - r.begin() >= 3;
}

PolynomialSumReport polynomial_complete_sum(
    const chars::DirichletCharacter& chi, const chars::PhaseTable& table,
    const arith::ArithProfile& q_profile, std::array<std::int64_t, 4> m) {
  const std::uint64_t q = chi.modulus();
  if (!admissible_tuple(q, m))
    throw std::invalid_argument(
        "polynomial_complete_sum: fewer than three distinct m_i mod " +
        std::to_string(q));
  require_primitive(chi, "polynomial_complete_sum");

  PolynomialSumReport rep{};
  for (int i = 0; i < 4; ++i) rep.m[i] = reduce(m[i], q);

  const auto& phases = table.phases();
  const auto& roots = table.roots();
  const auto order = static_cast<std::int64_t>(table.order());

  // r[i] tracks (x - m_i) mod q as x runs over 1..q.
  std::array<std::uint64_t, 4> r{};
  for (int i = 0; i < 4; ++i) r[i] = (1 + q - rep.m[i]) % q;
  std::complex<double> sum{0.0, 0.0};
  for (std::uint64_t x = 1; x <= q; ++x) {
    const std::int32_t p0 = phases[r[0]], p1 = phases[r[1]];
    const std::int32_t p2 = phases[r[2]], p3 = phases[r[3]];
    for (auto& ri : r)
      if (++ri == q) ri = 0;
    if (p0 < 0 || p1 < 0 || p2 < 0 || p3 < 0) continue;
    // chi(u)^(phi(q)-1) is the conjugate on units.
    std::int64_t k = static_cast<std::int64_t>(p0) + p1 - p2 - p3;
    k %= order;
    if (k < 0) k += order;
    sum += roots[static_cast<std::size_t>(k)];
  }
  rep.abs = std::abs(sum);

  rep.max_gcd = 0;
  rep.min_gcd = q;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t a_mod_q = 1 % q;
    bool nonzero = true;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      if (rep.m[i] == rep.m[j]) {
        nonzero = false;
        break;
      }
      const std::uint64_t diff =
          rep.m[i] > rep.m[j] ? rep.m[i] - rep.m[j] : rep.m[j] - rep.m[i];
      a_mod_q = arith::mul_mod(a_mod_q, diff % q, q);
    }
    if (!nonzero) continue;
    const std::uint64_t g = arith::gcd(q, a_mod_q);
    rep.max_gcd = std::max(rep.max_gcd, g);
    rep.min_gcd = std::min(rep.min_gcd, g);
  }
  const double scale = std::pow(8.0, q_profile.omega) *
                       std::sqrt(static_cast<double>(q));
  rep.bound = scale * static_cast<double>(rep.max_gcd);
  rep.min_bound = scale * static_cast<double>(rep.min_gcd);
  rep.holds = rep.abs <= rep.bound + kSumTolerance;
  rep.min_holds = rep.abs <= rep.min_bound + kSumTolerance;
  return rep;
}

PolynomialSumReport polynomial_complete_sum(
    const chars::DirichletCharacter& chi, std::array<std::int64_t, 4> m) {
  if (!admissible_tuple(chi.modulus(), m))
    throw std::invalid_argument(
        "polynomial_complete_sum: fewer than three distinct m_i mod " +
        std::to_string(chi.modulus()));
  require_primitive(chi, "polynomial_complete_sum");
  return polynomial_complete_sum(
      chi, chars::PhaseTable(chi),
      arith::profile(chi.group().factorization()), m);
}

std::vector<std::uint64_t> v_counts(std::uint64_t q, std::int64_t M,
                                    std::uint64_t N, std::uint64_t A) {
  if (q == 0 || A < 1 || A > q)
    throw std::domain_error("v_statistics: requires 1 <= A <= q");
  if (N < 1) throw std::domain_error("v_statistics: requires N >= 1");

  const auto sq = static_cast<std::int64_t>(q);
  const std::int64_t lo = M + 1;
  const std::int64_t hi = M + static_cast<std::int64_t>(N);
  // Number of n in [lo, hi] with n == r (mod q).
  auto in_class = [&](std::uint64_t r) -> std::uint64_t {
    const auto rr = static_cast<std::int64_t>(r);
    return static_cast<std::uint64_t>(floor_div(hi - rr, sq) -
                                      floor_div(lo - 1 - rr, sq));
  };

  std::vector<std::uint64_t> v(q, 0);
  for (std::uint64_t a = 1; a <= A; ++a) {
    if (arith::gcd(a, q) != 1) continue;
    std::uint64_t r = a % q;  // a * l mod q, starting at l = 1
    for (std::uint64_t l = 1; l <= q; ++l) {
      v[l - 1] += in_class(r);
      r += a;
      if (r >= q) r %= q;
    }
  }
  return v;
}

VStats v_statistics(std::uint64_t q, std::int64_t M, std::uint64_t N,
                    std::uint64_t A) {
  const auto v = v_counts(q, M, N, A);
  VStats s{};
  s.q = q;
  s.M = M;
  s.N = N;
  s.A = A;
  for (std::uint64_t a = 1; a <= A; ++a)
    if (arith::gcd(a, q) == 1) ++s.A_q;

  unsigned __int128 sum = 0, sum_sq = 0;
  for (std::uint64_t x : v) {
    sum += x;
    sum_sq += static_cast<unsigned __int128>(x) * x;
  }
  if (sum_sq > UINT64_MAX)
    throw std::overflow_error("v_statistics: sum of v(l)^2 exceeds 64 bits");
  s.sum_v = static_cast<std::uint64_t>(sum);
  s.sum_v2 = static_cast<std::uint64_t>(sum_sq);
  if (sum != static_cast<unsigned __int128>(s.A_q) * N)
    throw std::logic_error("v_statistics: sum of v(l) differs from A_q * N");

  const long double aq = static_cast<long double>(s.A_q);
  s.moment_bound = static_cast<double>(
      aq * aq + 2.0L * static_cast<long double>(A) *
                    static_cast<long double>(N) * std::log(2.0L * aq));
  return s;
}

std::uint64_t max_burgess_length(std::uint64_t q) {
  if (q == 0 || q > (std::uint64_t{1} << 25))
    throw std::domain_error("max_burgess_length: q out of range");
  using u128 = unsigned __int128;
  const u128 q5 = static_cast<u128>(q) * q * q * q * q;
  auto pow8 = [](std::uint64_t n) {
    u128 x = static_cast<u128>(n) * n;
    x *= x;
    return x * x;
  };
  auto n = static_cast<std::uint64_t>(std::pow(static_cast<double>(q), 0.625));
  while (n > 0 && pow8(n) > q5) --n;
  while (pow8(n + 1) <= q5) ++n;
  return n;
}

std::uint64_t burgess_a_parameter(std::uint64_t q, std::uint64_t N) {
  if (q == 0) throw std::domain_error("burgess_a_parameter: q must be positive");
  using u128 = unsigned __int128;
  const u128 n4 = static_cast<u128>(N) * N * N * N;
  // Largest a with (10a)^4 q <= N^4.
  auto fits = [&](std::uint64_t a) {
    const u128 ten_a = static_cast<u128>(10) * a;
    return ten_a * ten_a * ten_a * ten_a * q <= n4;
  };
  auto a = static_cast<std::uint64_t>(static_cast<double>(N) /
                                      (10.0 * std::pow(static_cast<double>(q), 0.25)));
  while (a > 0 && !fits(a)) --a;
  while (fits(a + 1)) ++a;
  return a;
}

}  // namespace burgess::sums
