#pragma once

// Evaluators for the explicit Burgess-type bound for primitive characters
// to composite moduli, the constants feeding it, and the size conditions
// on q under which it is proved. Everything is computed in the log domain
// so the evaluators work both for desk-scale q and at q = e^(e^9.594).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "burgess/logreal.hpp"

namespace burgess::bounds {

/// strict: reject inputs below the q >= e^(e^9.594) hypothesis.
/// relaxed: evaluate anyway and flag the report as out of hypothesis.
enum class Hypothesis { strict, relaxed };

struct BoundInputs {
  std::optional<double> log_q;
  std::optional<double> loglog_q;
  double log_n = 0.0;
  int omega = 0;
  std::uint64_t d = 1;
  std::optional<double> phi_ratio;
};

struct Comparison {
  LogReal measured;
  bool holds;
  /// log(measured / bound); negative when the bound holds with room.
  double log_ratio;
};

struct BoundReport {
  std::string name;
  LogReal value;
  BoundInputs inputs;
  bool in_hypothesis = true;
  std::optional<Comparison> holds_vs;

  /// Records whether measured <= value.
  BoundReport& compare_with(const LogReal& measured);
};

struct ClassicBounds {
  LogReal trivial;
  /// sqrt(q) log q with implied constant 1; a shape, not a proven bound.
  LogReal polya_vinogradov;
};

/// Throws std::domain_error unless log_q > 0 and log_n >= 0.
ClassicBounds classic_bounds(double log_q, double log_n);

/// sqrt(N) q^(3/16) 9.07 log(q)^(1/4) (2^omega d)^(3/4) (q/phi(q))^(1/2).
/// Throws std::domain_error if N > q^(5/8), phi_ratio < 1, or (strict)
/// log log q < 9.594.
BoundReport burgess_bound_theorem(double log_q, double log_n, int omega,
                                  std::uint64_t d, double phi_ratio,
                                  Hypothesis mode = Hypothesis::strict);

/// sqrt(N) q^(3/16) 12.11 log(q)^(1/4) (2^omega d)^(3/4)
///   (log log q + 1.69 / log log q)^(1/2), with log q = e^loglog_q.
BoundReport burgess_bound_corollary(double loglog_q, double log_n, int omega,
                                    std::uint64_t d,
                                    Hypothesis mode = Hypothesis::strict);

/// 3.3325 log(q)^(1/4) (q/phi(q))^(1/2) (2^omega d)^(3/4).
/// Throws std::domain_error unless log_q > 1.
LogReal lambda2_prime(double log_q, int omega, std::uint64_t d,
                      double phi_ratio);

struct ConditionResult {
  bool holds;
  double log_lhs;
  double log_rhs;

  double log_margin() const { return log_lhs - log_rhs; }
};

/// Exact omega(q) and q/phi(q) to use instead of the appendix ceilings.
struct ExactArith {
  int omega;
  double phi_ratio;
};

/// The size conditions on q:
///   length      q^(1/8) >= 10 (2^omega (q/phi) / (2C) + 1)
///   density     length holds and (1 - C) >= 1/2, so A_q/A >= phi(q)/(2q)
///   ceilings    length with 2^omega <= q^(1.066/loglog q) and
///               q/phi < e^gamma loglog q + 3/loglog q substituted
///   ninth_root  q^(1/8) >= 10 (q^(1/9) (e^gamma loglog q + 1/(3*1.066)) + 1)
/// length uses the ceilings too unless exact values are given.
struct QConditions {
  double loglog_q;
  double C;
  ConditionResult length;
  ConditionResult density;
  ConditionResult ceilings;
  ConditionResult ninth_root;
};

/// Throws std::domain_error unless loglog_q > 0 and 0 < C < 1.
QConditions check_q_conditions(double loglog_q, double C,
                               std::optional<ExactArith> exact = std::nullopt);

/// (1/2) / (e^gamma loglog q + 3/loglog q).
LogReal aq_ratio_floor(double loglog_q, Hypothesis mode = Hypothesis::strict);

struct RecursionUnroll {
  /// lambda sqrt(N) q^(3/16)
  LogReal base;
  /// Entry K: base * sum_{k<=K} (2/sqrt 10)^k + N / 5^(K+1).
  std::vector<LogReal> partials;
  /// base * sqrt(10) / (sqrt(10) - 2)
  LogReal limit;
};

RecursionUnroll recursion_unroll(double lambda, double log_q, double log_n,
                                 unsigned K);

/// A named high-precision check. lhs and rhs are oriented so that a
/// passing check has lhs <= rhs; detail carries the 30+ digit values.
struct NamedCheck {
  std::string name;
  bool holds;
  double lhs;
  double rhs;
  std::string detail;
};

/// Constant chain at 50 digits: the final constant, the corollary
/// constant and shift, the lambda constant, and the geometric series.
std::vector<NamedCheck> constant_chain();

/// Magnitude of e^(e^9.594), the size of A at threshold, the short-N
/// cutoff, and the ninth_root condition at and below the threshold.
std::vector<NamedCheck> threshold_facts();

inline constexpr double kLengthTolerance = 1e-12;

}  // namespace burgess::bounds
