#pragma once

// Character-sum quantities: interval sums S(M, N), the maximal function
// M(y), the fourth moment of short sums, complete sums of chi over a
// quotient of quadratics, and the pair counts v(l) behind the second
// moment estimate.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "burgess/arith.hpp"
#include "burgess/characters.hpp"

namespace burgess::sums {

/// Absolute slack allowed when comparing floating sums against bounds.
inline constexpr double kSumTolerance = 1e-6;

struct IntervalSum {
  std::int64_t M;
  std::uint64_t N;
  std::complex<double> value;
  double abs;
};

/// S(M, N) = sum of chi(n) for M < n <= M + N.
IntervalSum interval_sum(const chars::PhaseTable& table, std::int64_t M,
                         std::uint64_t N);
IntervalSum interval_sum(const chars::DirichletCharacter& chi, std::int64_t M,
                         std::uint64_t N);

struct MaxIntervalSum {
  double value;
  std::int64_t M;
  std::uint64_t N;
};

/// max |S(M, N)| over 0 <= M < q, 1 <= N <= y. Ties (equal up to a
/// relative 1e-12) resolve to the smallest M, then the smallest N.
/// Throws std::domain_error for y == 0.
MaxIntervalSum max_interval_sum(const chars::PhaseTable& table,
                                std::uint64_t y);
MaxIntervalSum max_interval_sum(const chars::DirichletCharacter& chi,
                                std::uint64_t y);

/// Entry N-1 holds max over M of |S(M, N)| for windows of exactly length N.
/// The running maximum of this vector is M(y).
std::vector<double> window_maxima(const chars::PhaseTable& table,
                                  std::uint64_t y);

struct FourthMomentReport {
  std::uint64_t q;
  std::uint64_t B;
  double lhs;
  double rhs;
  double margin;

  bool holds() const { return lhs <= rhs + kSumTolerance; }
};

/// (7B^2 - 6B) q + 4 * 8^omega * sqrt(q) * B^4 * d^3
double fourth_moment_rhs(std::uint64_t q, std::uint64_t B, int omega,
                         std::uint64_t d);

/// sum over l = 1..q of |sum over b = 1..B of chi(l + b)|^4, against the
/// explicit bound. Throws std::domain_error unless chi is primitive and
/// 1 <= B < sqrt(q).
FourthMomentReport fourth_moment(const chars::DirichletCharacter& chi,
                                 std::uint64_t B);
FourthMomentReport fourth_moment(const chars::DirichletCharacter& chi,
                                 const chars::PhaseTable& table,
                                 const arith::ArithProfile& q_profile,
                                 std::uint64_t B);

struct PolynomialSumReport {
  std::array<std::uint64_t, 4> m;
  double abs;
  /// 8^omega sqrt(q) times the largest (q, A_i) over nonzero A_i.
  double bound;
  /// Same with the smallest (q, A_i); reported, never asserted.
  double min_bound;
  std::uint64_t max_gcd;
  std::uint64_t min_gcd;
  bool holds;
  bool min_holds;
};

/// |sum over x = 1..q of chi((x-m1)(x-m2)) * conj(chi((x-m3)(x-m4)))|.
/// Throws std::invalid_argument when fewer than three of the m_i are
/// distinct mod q, std::domain_error when chi is not primitive.
PolynomialSumReport polynomial_complete_sum(
    const chars::DirichletCharacter& chi, std::array<std::int64_t, 4> m);
PolynomialSumReport polynomial_complete_sum(
    const chars::DirichletCharacter& chi, const chars::PhaseTable& table,
    const arith::ArithProfile& q_profile, std::array<std::int64_t, 4> m);

/// At least three distinct residues among m mod q.
bool admissible_tuple(std::uint64_t q, const std::array<std::int64_t, 4>& m);

struct VStats {
  std::uint64_t q;
  std::int64_t M;
  std::uint64_t N;
  std::uint64_t A;
  std::uint64_t A_q;
  std::uint64_t sum_v;
  std::uint64_t sum_v2;
  double moment_bound;

  bool holds() const {
    return sum_v == A_q * N &&
           static_cast<double>(sum_v2) <= moment_bound + kSumTolerance;
  }
};

/// v(l) for l = 1..q (entry l-1): pairs (a, n) with a <= A coprime to q,
/// M < n <= M + N, n == a*l mod q. Throws std::domain_error unless
/// 1 <= A <= q and N >= 1.
std::vector<std::uint64_t> v_counts(std::uint64_t q, std::int64_t M,
                                    std::uint64_t N, std::uint64_t A);

/// Sums of v and v^2 with the bound A_q^2 + 2 A N log(2 A_q).
/// Throws std::logic_error if sum v != A_q N.
VStats v_statistics(std::uint64_t q, std::int64_t M, std::uint64_t N,
                    std::uint64_t A);

/// floor(q^(5/8)), exact.
std::uint64_t max_burgess_length(std::uint64_t q);

/// floor(N q^(-1/4) / 10), exact.
std::uint64_t burgess_a_parameter(std::uint64_t q, std::uint64_t N);

}  // namespace burgess::sums
