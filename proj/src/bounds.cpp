#include "burgess/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "burgess/constants.hpp"
#include "burgess/precise.hpp"

namespace burgess::bounds {
namespace {

namespace c = constants;

const double kLn2 = std::log(2.0);
const double kExpGamma = static_cast<double>(std::exp(c::kEulerGamma));

bool below_threshold(double loglog_q) {
  return loglog_q < c::kLogLogThreshold;
}

void check_length(double log_q, double log_n) {
  if (!(log_n >= 0.0))
    throw std::domain_error("interval length must satisfy N >= 1");
  const double cap = 0.625 * log_q;
  if (log_n > cap + kLengthTolerance * std::max(1.0, std::abs(cap)))
    throw std::domain_error(
        fmt::format("N exceeds q^(5/8): log N = {} > {}", log_n, cap));
}

// (2^omega d)^(3/4)
LogReal divisor_factor(int omega, std::uint64_t d) {
  if (omega < 0 || d < 1)
    throw std::domain_error("omega must be >= 0 and d >= 1");
  return LogReal::from_log(omega * kLn2 + std::log(static_cast<double>(d)))
      .pow(0.75);
}

ConditionResult condition(const LogReal& lhs, const LogReal& rhs) {
  return {lhs >= rhs, lhs.log(), rhs.log()};
}

NamedCheck interval_check(std::string name, const Precise& value,
                          const Precise& lo, const Precise& hi) {
  const bool holds = lo <= value && value <= hi;
  return {std::move(name), holds, static_cast<double>(value),
          static_cast<double>(hi),
          fmt::format("{} in [{}, {}]", precise::to_string(value),
                      precise::to_string(lo, 8), precise::to_string(hi, 8))};
}

}  // namespace

BoundReport& BoundReport::compare_with(const LogReal& measured) {
  const double log_ratio =
      measured.is_zero() ? -INFINITY : measured.log() - value.log();
  holds_vs = Comparison{measured, measured <= value, log_ratio};
  return *this;
}

ClassicBounds classic_bounds(double log_q, double log_n) {
  if (!(log_q > 0.0)) throw std::domain_error("classic_bounds: requires q > 1");
  if (!(log_n >= 0.0)) throw std::domain_error("classic_bounds: requires N >= 1");
  return {LogReal::from_log(log_n),
          LogReal::from_log(0.5 * log_q + std::log(log_q))};
}

BoundReport burgess_bound_theorem(double log_q, double log_n, int omega,
                                  std::uint64_t d, double phi_ratio,
                                  Hypothesis mode) {
  if (!(log_q > 0.0))
    throw std::domain_error("burgess_bound_theorem: requires q > 1");
  check_length(log_q, log_n);
  if (!(phi_ratio >= 1.0))
    throw std::domain_error("burgess_bound_theorem: q/phi(q) must be >= 1");
  const bool in_hypothesis = !below_threshold(std::log(log_q));
  if (!in_hypothesis && mode == Hypothesis::strict)
    throw std::domain_error(
        fmt::format("burgess_bound_theorem: log log q = {} is below {}",
                    std::log(log_q), c::kLogLogThreshold));

  const LogReal value = LogReal::from_log(log_n).pow(0.5) *
                        LogReal::from_log(log_q).pow(3.0 / 16.0) *
                        LogReal::from_value(c::kTheoremConstant) *
                        LogReal::from_value(log_q).pow(0.25) *
                        divisor_factor(omega, d) *
                        LogReal::from_value(phi_ratio).pow(0.5);

  BoundReport r;
  r.name = "theorem";
  r.value = value;
  r.inputs = {log_q, std::nullopt, log_n, omega, d, phi_ratio};
  r.in_hypothesis = in_hypothesis;
  return r;
}

BoundReport burgess_bound_corollary(double loglog_q, double log_n, int omega,
                                    std::uint64_t d, Hypothesis mode) {
  if (!(loglog_q > 0.0))
    throw std::domain_error("burgess_bound_corollary: requires log log q > 0");
  const double log_q = std::exp(loglog_q);
  check_length(log_q, log_n);
  const bool in_hypothesis = !below_threshold(loglog_q);
  if (!in_hypothesis && mode == Hypothesis::strict)
    throw std::domain_error(
        fmt::format("burgess_bound_corollary: log log q = {} is below {}",
                    loglog_q, c::kLogLogThreshold));

  const LogReal value =
      LogReal::from_log(log_n).pow(0.5) *
      LogReal::from_log(log_q).pow(3.0 / 16.0) *
      LogReal::from_value(c::kCorollaryConstant) *
      LogReal::from_log(loglog_q).pow(0.25) * divisor_factor(omega, d) *
      LogReal::from_value(loglog_q + c::kCorollaryShift / loglog_q).pow(0.5);

  BoundReport r;
  r.name = "corollary";
  r.value = value;
  r.inputs = {std::nullopt, loglog_q, log_n, omega, d, std::nullopt};
  r.in_hypothesis = in_hypothesis;
  return r;
}

LogReal lambda2_prime(double log_q, int omega, std::uint64_t d,
                      double phi_ratio) {
  if (!(log_q > 1.0)) throw std::domain_error("lambda2_prime: requires log q > 1");
  if (!(phi_ratio > 0.0))
    throw std::domain_error("lambda2_prime: q/phi(q) must be positive");
  return LogReal::from_value(c::kLambdaConstant) *
         LogReal::from_value(log_q).pow(0.25) *
         LogReal::from_value(phi_ratio).pow(0.5) * divisor_factor(omega, d);
}

QConditions check_q_conditions(double loglog_q, double C,
                               std::optional<ExactArith> exact) {
  if (!(loglog_q > 0.0))
    throw std::domain_error("check_q_conditions: requires log log q > 0");
  if (!(C > 0.0 && C < 1.0))
    throw std::domain_error("check_q_conditions: requires 0 < C < 1");

  const double t = loglog_q;
  const double log_q = std::exp(t);
  const LogReal eighth_root = LogReal::from_log(log_q / 8.0);
  const LogReal ten = LogReal::from_value(10.0);
  const LogReal one = LogReal::one();
  const LogReal half_over_c = LogReal::from_value(1.0 / (2.0 * C));

  const LogReal divisor_ceiling =
      LogReal::from_log(c::kDivisorExponent * log_q / t);
  const LogReal ratio_ceiling =
      LogReal::from_value(kExpGamma * t + c::kPhiShift / t);

  const LogReal two_omega =
      exact ? LogReal::from_log(exact->omega * kLn2) : divisor_ceiling;
  const LogReal ratio =
      exact ? LogReal::from_value(exact->phi_ratio) : ratio_ceiling;

  QConditions out{};
  out.loglog_q = loglog_q;
  out.C = C;
  out.length = condition(eighth_root, ten * (two_omega * ratio * half_over_c + one));
  out.density = {out.length.holds && (1.0 - C) >= 0.5, std::log(1.0 - C),
                 std::log(0.5)};
  out.ceilings = condition(
      eighth_root, ten * (half_over_c * divisor_ceiling * ratio_ceiling + one));
  const LogReal ninth_root = LogReal::from_log(log_q / 9.0);
  const LogReal shifted = LogReal::from_value(
      kExpGamma * t + 1.0 / (3.0 * c::kDivisorExponent));
  out.ninth_root = condition(eighth_root, ten * (ninth_root * shifted + one));
  return out;
}

LogReal aq_ratio_floor(double loglog_q, Hypothesis mode) {
  if (!(loglog_q > 0.0))
    throw std::domain_error("aq_ratio_floor: requires log log q > 0");
  if (mode == Hypothesis::strict && below_threshold(loglog_q))
    throw std::domain_error(fmt::format(
        "aq_ratio_floor: log log q = {} is below {}", loglog_q,
        c::kLogLogThreshold));
  return LogReal::from_value(
      0.5 / (kExpGamma * loglog_q + c::kPhiShift / loglog_q));
}

RecursionUnroll recursion_unroll(double lambda, double log_q, double log_n,
                                 unsigned K) {
  if (!(lambda > 0.0))
    throw std::domain_error("recursion_unroll: lambda must be positive");
  RecursionUnroll out;
  out.base = LogReal::from_value(lambda) * LogReal::from_log(log_n).pow(0.5) *
             LogReal::from_log(log_q).pow(3.0 / 16.0);
  const long double ratio = 2.0L / c::kSqrt10;
  const double log5 = std::log(5.0);

  long double series = 0.0L;
  long double term = 1.0L;
  out.partials.reserve(K + 1);
  for (unsigned k = 0; k <= K; ++k) {
    series += term;
    term *= ratio;
    const LogReal tail = LogReal::from_log(log_n - (k + 1) * log5);
    out.partials.push_back(
        out.base * LogReal::from_value(static_cast<double>(series)) + tail);
  }
  out.limit = out.base * LogReal::from_value(static_cast<double>(
                             c::kSqrt10 / (c::kSqrt10 - 2.0L)));
  return out;
}

std::vector<NamedCheck> constant_chain() {
  const Precise s10 = precise::sqrt10();
  const Precise gamma = precise::euler_gamma();
  const Precise geometric_limit = s10 / (s10 - 2);

  std::vector<NamedCheck> out;
  out.push_back(interval_check("final_constant",
                               geometric_limit * Precise("3.3325"),
                               Precise("9.066"), Precise("9.07")));
  out.push_back(interval_check("corollary_constant",
                               Precise("9.07") * exp(gamma / 2),
                               Precise("12.10"), Precise("12.11")));
  out.push_back(interval_check("corollary_shift", 3 * exp(-gamma),
                               Precise("1.684"), Precise("1.69")));
  out.push_back(interval_check(
      "lambda_constant",
      Precise("1.0001") * pow(Precise(4) + Precise(7) / 64, Precise("0.25")) *
          pow(Precise(30), Precise("0.25")),
      Precise(0), Precise("3.3325")));

  const Precise ratio = 2 / s10;
  Precise series = 0, term = 1;
  int terms = 0;
  while (term > Precise("1e-45")) {
    series += term;
    term *= ratio;
    ++terms;
  }
  const Precise gap = abs(series - geometric_limit);
  out.push_back({"geometric_series", gap < Precise("1e-25"),
                 static_cast<double>(gap), 1e-25,
                 fmt::format("{} terms sum to {}; |sum - sqrt10/(sqrt10-2)| = {}",
                             terms, precise::to_string(series),
                             precise::to_string(gap, 6))});
  return out;
}

std::vector<NamedCheck> threshold_facts() {
  const Precise log_q = exp(Precise("9.594"));
  const Precise q = exp(log_q);
  const Precise log10_q = log10(q);
  const Precise exponent = floor(log10_q);
  const Precise mantissa = q / pow(Precise(10), exponent);
  const Precise rounded = round(mantissa * 100000);

  std::vector<NamedCheck> out;
  out.push_back({"threshold_magnitude",
                 exponent == 6373 && rounded == 803104,
                 static_cast<double>(abs(mantissa - Precise("8.03104"))), 5e-6,
                 fmt::format("e^(e^9.594) = {}e{}", precise::to_string(mantissa, 12),
                             precise::to_string(exponent, 8))});

  const Precise a_floor = pow(q, Precise(1) / 8) / 10;
  const Precise claimed = 5 * pow(Precise(10), 795);
  out.push_back({"a_parameter_floor", a_floor > claimed,
                 static_cast<double>(log10(claimed)),
                 static_cast<double>(log10(a_floor)),
                 fmt::format("log10(q^(1/8)/10) = {} vs log10(5e795) = {}",
                             precise::to_string(log10(a_floor), 12),
                             precise::to_string(log10(claimed), 12))});

  const Precise cutoff_exponent = Precise(3) / 8 * log_q;
  const Precise short_range = log(pow(q, Precise(3) / 8));
  const Precise cutoff_gap = abs(cutoff_exponent - short_range);
  out.push_back({"short_interval_cutoff",
                 cutoff_gap < Precise("1e-30") * log_q,
                 static_cast<double>(cutoff_gap),
                 static_cast<double>(Precise("1e-30") * log_q),
                 fmt::format("(3/8) e^9.594 = {}; log q^(3/8) = {}",
                             precise::to_string(cutoff_exponent),
                             precise::to_string(short_range))});

  const Precise t = Precise("9.594");
  const Precise k = Precise("1.066");
  const Precise e1 = abs(k / t - Precise(1) / 9);
  const Precise e2 = abs(3 / t - 1 / (3 * k));
  out.push_back({"ninth_root_exponent", e1 < Precise("1e-45") && e2 < Precise("1e-45"),
                 static_cast<double>(e1 > e2 ? e1 : e2), 1e-45,
                 fmt::format("1.066/9.594 - 1/9 = {}; 3/9.594 - 1/(3*1.066) = {}",
                             precise::to_string(e1, 6), precise::to_string(e2, 6))});

  const auto at_threshold = check_q_conditions(c::kLogLogThreshold, 0.5).ninth_root;
  out.push_back({"ninth_root_condition_at_threshold", at_threshold.holds,
                 at_threshold.log_rhs, at_threshold.log_lhs,
                 fmt::format("log lhs = {:.6f}, log rhs = {:.6f}",
                             at_threshold.log_lhs, at_threshold.log_rhs)});
  const auto small = check_q_conditions(2.0, 0.5).ninth_root;
  out.push_back({"ninth_root_condition_fails_at_2", !small.holds, small.log_lhs,
                 small.log_rhs,
                 fmt::format("log lhs = {:.6f}, log rhs = {:.6f}",
                             small.log_lhs, small.log_rhs)});
  return out;
}

}  // namespace burgess::bounds
