#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <tuple>

#include "burgess/arith.hpp"
#include "burgess/bounds.hpp"
#include "burgess/characters.hpp"
#include "burgess/charsums.hpp"
#include "burgess/harness.hpp"
#include "burgess/rng.hpp"

namespace burgess::cli {

namespace {

using Item = std::variant<VerificationRecord, TableRow>;
using Shard = std::vector<Item>;

constexpr std::uint64_t kSweepCap = 5000;
constexpr std::uint64_t kAppendixCap = 100'000'000;
constexpr std::uint64_t kAppendixBlock = 10'000;
constexpr int kSweepGridPoints = 12;

unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs work(0..shards-1) on a pool and hands each result to emit in index
// order. Workers stay at most `window` shards ahead of the emitter.
void ordered_parallel(std::size_t shards, unsigned workers,
                      const std::function<Shard(std::size_t)>& work,
                      const std::function<void(Shard&)>& emit) {
  if (workers <= 1 || shards <= 1) {
    for (std::size_t i = 0; i < shards; ++i) {
      Shard s = work(i);
      emit(s);
    }
    return;
  }

  const std::size_t window = 4 * static_cast<std::size_t>(workers);
  std::vector<std::optional<Shard>> slots(shards);
  std::vector<std::exception_ptr> errors(shards);
  std::mutex mu;
  std::condition_variable cv;
  std::size_t next = 0, emitted = 0;
  bool abort = false;

  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] {
          return abort || next >= shards || next < emitted + window;
        });
        if (abort || next >= shards) return;
        i = next++;
      }
      Shard result;
      std::exception_ptr error;
      try {
        result = work(i);
      } catch (...) {
        error = std::current_exception();
      }
      {
        std::lock_guard lock(mu);
        slots[i] = std::move(result);
        errors[i] = error;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(
      std::min<std::size_t>(workers, shards));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);

  std::exception_ptr failure;
  for (std::size_t i = 0; i < shards && !failure; ++i) {
    Shard shard;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return slots[i].has_value(); });
      if (errors[i]) {
        failure = errors[i];
        abort = true;
      } else {
        shard = std::move(*slots[i]);
        slots[i].reset();
        emitted = i + 1;
      }
    }
    cv.notify_all();
    if (failure) break;
    try {
      emit(shard);
    } catch (...) {
      failure = std::current_exception();
      std::lock_guard lock(mu);
      abort = true;
    }
    cv.notify_all();
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

class Collector {
 public:
  Collector(RecordSink& sink, bool failures_only)
      : sink_(sink), failures_only_(failures_only) {}

  std::function<void(const TableRow&)> observer;

  void operator()(Shard& shard) {
    for (auto& item : shard) {
      if (auto* r = std::get_if<VerificationRecord>(&item)) {
        count(r->holds, r->margin);
        if (!failures_only_ || !r->holds) sink_.record(*r);
      } else {
        auto& row = std::get<TableRow>(item);
        if (row.holds)
          count(*row.holds, row.margin);
        else
          ++summary.total;
        if (observer) observer(row);
        if (!failures_only_ || !row.holds || !*row.holds) sink_.row(row);
      }
    }
  }

  Summary summary;

 private:
  void count(bool holds, std::optional<double> margin) {
    ++summary.total;
    ++(holds ? summary.held : summary.failed);
    if (margin && (!summary.min_margin || *margin < *summary.min_margin))
      summary.min_margin = *margin;
  }

  RecordSink& sink_;
  bool failures_only_;
};

VerificationRecord make_record(std::string statement,
                               std::vector<Field> instance, double lhs,
                               double rhs, bool holds) {
  return {std::move(statement), std::move(instance), lhs, rhs, holds,
          rhs - lhs};
}

std::vector<chars::DirichletCharacter> primitive_characters(
    const chars::GroupPtr& group, std::vector<std::uint64_t>& indices) {
  std::vector<chars::DirichletCharacter> out;
  indices.clear();
  for (std::uint64_t i = 0; i < group->phi(); ++i) {
    auto chi = chars::character_at(group, i);
    if (chi.primitive()) {
      out.push_back(std::move(chi));
      indices.push_back(i);
    }
  }
  return out;
}

Shard prop21_shard(std::uint64_t q) {
  const auto f = arith::factorize(q);
  Shard out;
  out.reserve(q);
  for (std::uint64_t A = 1; A <= q; ++A) {
    const auto cc = arith::coprime_count(A, f);
    const double lhs = std::fabs(static_cast<double>(cc.error()));
    const double rhs = std::ldexp(1.0, cc.omega - 1);
    out.emplace_back(make_record(
        "Prop2.1", {{"q", q}, {"A", A}, {"A_q", cc.count}}, lhs, rhs,
        cc.error_within_bound()));
  }
  return out;
}

Shard lemma32_shard(std::uint64_t q) {
  Shard out;
  const auto group = chars::build_group(q);
  const auto prof = arith::profile(group->factorization());
  std::vector<std::uint64_t> indices;
  const auto prims = primitive_characters(group, indices);
  for (std::size_t k = 0; k < prims.size(); ++k) {
    const chars::PhaseTable table(prims[k]);
    for (std::uint64_t B = 1; B * B < q; ++B) {
      const auto r = sums::fourth_moment(prims[k], table, prof, B);
      out.emplace_back(make_record(
          "Lemma3.2", {{"q", q}, {"chi", indices[k]}, {"B", B}}, r.lhs,
          r.rhs, r.holds()));
    }
  }
  return out;
}

Shard lemma31_shard(std::uint64_t q, std::uint64_t seed,
                    std::uint64_t samples) {
  Shard out;
  if (q < 3) return out;
  auto rng = SplitMix64::derive(seed, q);
  const auto group = chars::build_group(q);
  const auto prof = arith::profile(group->factorization());
  std::vector<std::uint64_t> indices;
  const auto prims = primitive_characters(group, indices);
  for (std::size_t k = 0; k < prims.size(); ++k) {
    const chars::PhaseTable table(prims[k]);
    for (std::uint64_t s = 0; s < samples; ++s) {
      std::array<std::int64_t, 4> m{};
      do {
        for (auto& x : m) x = static_cast<std::int64_t>(rng.uniform(q));
      } while (!sums::admissible_tuple(q, m));
      const auto r = sums::polynomial_complete_sum(prims[k], table, prof, m);
      out.emplace_back(make_record("Lemma3.1",
                                   {{"q", q},
                                    {"chi", indices[k]},
                                    {"m1", m[0]},
                                    {"m2", m[1]},
                                    {"m3", m[2]},
                                    {"m4", m[3]},
                                    {"min_ok", r.min_holds}},
                                   r.abs, r.bound, r.holds));
    }
  }
  return out;
}

struct VSample {
  std::uint64_t q;
  std::int64_t M;
  std::uint64_t N;
  friend bool operator<(const VSample& a, const VSample& b) {
    return std::tie(a.q, a.M, a.N) < std::tie(b.q, b.M, b.N);
  }
};

// Smallest N with floor(N q^(-1/4) / 10) >= 1, or 0 if that N exceeds
// floor(q^(5/8)).
std::uint64_t min_burgess_length(std::uint64_t q) {
  const std::uint64_t n_max = sums::max_burgess_length(q);
  for (std::uint64_t N = 1; N <= n_max; ++N)
    if (sums::burgess_a_parameter(q, N) >= 1) return N;
  return 0;
}

std::vector<std::vector<VSample>> vstats_plan(const RunConfig& cfg) {
  std::vector<std::uint64_t> eligible;
  for (std::uint64_t q = cfg.q_range.lo; q <= cfg.q_range.hi; ++q)
    if (min_burgess_length(q)) eligible.push_back(q);
  if (eligible.empty())
    throw usage_error(
        "no q in the range admits N <= q^(5/8) with floor(N q^(-1/4)/10) >= 1");

  SplitMix64 rng(cfg.seed);
  std::vector<VSample> all;
  all.reserve(cfg.samples);
  for (std::uint64_t i = 0; i < cfg.samples; ++i) {
    const std::uint64_t q = eligible[rng.uniform(eligible.size())];
    const std::uint64_t N =
        rng.uniform(min_burgess_length(q), sums::max_burgess_length(q));
    const auto M = static_cast<std::int64_t>(rng.uniform(q));
    all.push_back({q, M, N});
  }
  std::sort(all.begin(), all.end());

  std::vector<std::vector<VSample>> shards;
  for (const auto& s : all) {
    if (shards.empty() || shards.back().front().q != s.q) shards.emplace_back();
    shards.back().push_back(s);
  }
  return shards;
}

Shard vstats_shard(const std::vector<VSample>& samples) {
  Shard out;
  for (const auto& s : samples) {
    const std::uint64_t A = sums::burgess_a_parameter(s.q, s.N);
    const auto v = sums::v_statistics(s.q, s.M, s.N, A);
    out.emplace_back(make_record("MomentV",
                                 {{"q", s.q},
                                  {"M", s.M},
                                  {"N", s.N},
                                  {"A", A},
                                  {"A_q", v.A_q},
                                  {"sum_v", v.sum_v}},
                                 static_cast<double>(v.sum_v2),
                                 v.moment_bound, v.holds()));
  }
  return out;
}

Shard appendix_shard(const arith::ProfileSieve& sieve, std::uint64_t lo,
                     std::uint64_t hi) {
  Shard out;
  out.reserve(3 * (hi - lo + 1));
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const auto r = arith::check_appendix_bounds(
        sieve.profile(static_cast<std::uint32_t>(n)));
    // phi is a lower bound, so its comparison is written floor <= phi.
    out.emplace_back(make_record("ThmA.1", {{"n", n}}, r.phi_lower.bound,
                                 r.phi_lower.actual, r.phi_lower.holds));
    out.emplace_back(make_record("ThmA.2", {{"n", n}}, r.divisor_upper.actual,
                                 r.divisor_upper.bound,
                                 r.divisor_upper.holds));
    out.emplace_back(make_record("ThmA.3", {{"n", n}}, r.omega_upper.actual,
                                 r.omega_upper.bound, r.omega_upper.holds));
  }
  return out;
}

Shard named_checks(const std::string& statement,
                   const std::vector<bounds::NamedCheck>& checks) {
  Shard out;
  for (const auto& c : checks)
    out.emplace_back(make_record(
        statement, {{"name", c.name}, {"detail", c.detail}}, c.lhs, c.rhs,
        c.holds));
  return out;
}

Shard thresholds_shard() {
  Shard out = named_checks("Thresholds", bounds::threshold_facts());
  for (int k = 0;; ++k) {
    const double t = 9.594 + 0.1 * k;
    if (t > 12.0 + 1e-9) break;
    const auto c = bounds::check_q_conditions(t, 0.5).ninth_root;
    out.emplace_back(make_record("NinthRootCondition", {{"loglog_q", t}},
                                 c.log_rhs, c.log_lhs, c.holds));
  }
  return out;
}

std::vector<std::uint64_t> sweep_grid(std::uint64_t n_max) {
  std::vector<std::uint64_t> grid;
  const double top = std::log(static_cast<double>(n_max));
  for (int k = 0; k < kSweepGridPoints; ++k) {
    auto N = static_cast<std::uint64_t>(
        std::llround(std::exp(top * k / (kSweepGridPoints - 1))));
    N = std::clamp<std::uint64_t>(N, 1, n_max);
    if (grid.empty() || grid.back() != N) grid.push_back(N);
  }
  if (grid.back() != n_max) grid.push_back(n_max);
  return grid;
}

Shard sweep_shard(std::uint64_t q) {
  Shard out;
  if (q < 3) return out;
  const auto group = chars::build_group(q);
  const auto prof = arith::profile(group->factorization());
  const double log_q = std::log(static_cast<double>(q));
  const double phi_ratio =
      static_cast<double>(q) / static_cast<double>(prof.phi);
  const std::uint64_t n_max = sums::max_burgess_length(q);
  const auto grid = sweep_grid(n_max);
  const double pv = std::sqrt(static_cast<double>(q)) * log_q;

  std::vector<double> theorem(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g)
    theorem[g] = bounds::burgess_bound_theorem(
                     log_q, std::log(static_cast<double>(grid[g])), prof.omega,
                     prof.d, phi_ratio, bounds::Hypothesis::relaxed)
                     .value.value();

  std::vector<std::uint64_t> indices;
  const auto prims = primitive_characters(group, indices);
  for (std::size_t k = 0; k < prims.size(); ++k) {
    const chars::PhaseTable table(prims[k]);
    auto running = sums::window_maxima(table, n_max);
    for (std::size_t i = 1; i < running.size(); ++i)
      running[i] = std::max(running[i], running[i - 1]);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const std::uint64_t N = grid[g];
      const double measured = running[N - 1];
      const bool holds = measured <= theorem[g];
      TableRow row;
      row.fields = {{"q", q},
                    {"chi", indices[k]},
                    {"N", N},
                    {"measured", measured},
                    {"trivial", static_cast<double>(N)},
                    {"pv_shape", pv},
                    {"theorem_relaxed", theorem[g]},
                    {"ratio", measured / theorem[g]},
                    {"holds", holds}};
      row.holds = holds;
      row.margin = theorem[g] - measured;
      out.emplace_back(std::move(row));
    }
  }
  return out;
}

Shard char_table_shard(std::uint64_t q) {
  chars::GroupPtr group;
  try {
    group = chars::build_group(q);
  } catch (const chars::capacity_error& e) {
    throw usage_error(e.what());
  }
  Shard out;
  for (std::uint64_t i = 0; i < group->phi(); ++i) {
    const auto chi = chars::character_at(group, i);
    std::string exps;
    for (std::size_t c = 0; c < chi.exponents().size(); ++c) {
      if (c) exps += ' ';
      exps += std::to_string(chi.exponents()[c]);
    }
    const bool even = chi(-1).numerator() == 0;
    TableRow row;
    row.fields = {{"index", i},
                  {"exponents", exps},
                  {"order", chi.order()},
                  {"conductor", chi.conductor()},
                  {"primitive", chi.primitive()},
                  {"parity", std::string(even ? "even" : "odd")}};
    out.emplace_back(std::move(row));
  }
  return out;
}

TableRow bound_row(const std::string& name, const LogReal& v,
                   bool in_hypothesis) {
  TableRow row;
  row.fields = {{"name", name},
                {"value", v.to_string()},
                {"log_value", v.log()},
                {"log10_value", v.log10()},
                {"in_hypothesis", in_hypothesis}};
  return row;
}

Shard bound_shard(const BoundArgs& b) {
  const auto mode =
      b.relaxed ? bounds::Hypothesis::relaxed : bounds::Hypothesis::strict;
  Shard out;
  try {
    const auto th = bounds::burgess_bound_theorem(b.log_q, b.log_n, b.omega,
                                                  b.d, b.phi_ratio, mode);
    const auto co = bounds::burgess_bound_corollary(std::log(b.log_q), b.log_n,
                                                    b.omega, b.d, mode);
    const auto classic = bounds::classic_bounds(b.log_q, b.log_n);
    const auto lam = bounds::lambda2_prime(b.log_q, b.omega, b.d, b.phi_ratio);
    out.emplace_back(bound_row("theorem", th.value, th.in_hypothesis));
    out.emplace_back(bound_row("corollary", co.value, co.in_hypothesis));
    out.emplace_back(bound_row("trivial", classic.trivial, true));
    out.emplace_back(bound_row("polya_vinogradov", classic.polya_vinogradov, true));
    out.emplace_back(bound_row("lambda2_prime", lam, true));
  } catch (const std::domain_error& e) {
    throw usage_error(e.what());
  }
  return out;
}

}  // namespace

Summary execute(const RunConfig& cfg, RecordSink& sink) {
  Collector collect(sink, cfg.failures_only);
  const unsigned workers = worker_count(cfg.parallelism);
  auto emit = [&](Shard& s) { collect(s); };
  const auto [lo, hi] = cfg.q_range;
  const std::size_t span = hi >= lo ? hi - lo + 1 : 0;

  switch (cfg.command) {
    case Command::verify_prop21:
      ordered_parallel(span, workers,
                       [&](std::size_t i) { return prop21_shard(lo + i); }, emit);
      break;
    case Command::verify_lemma32:
      ordered_parallel(span, workers,
                       [&](std::size_t i) { return lemma32_shard(lo + i); }, emit);
      break;
    case Command::verify_lemma31:
      ordered_parallel(
          span, workers,
          [&](std::size_t i) {
            return lemma31_shard(lo + i, cfg.seed, cfg.samples);
          },
          emit);
      break;
    case Command::verify_vstats: {
      const auto plan = vstats_plan(cfg);
      ordered_parallel(plan.size(), workers,
                       [&](std::size_t i) { return vstats_shard(plan[i]); },
                       emit);
      break;
    }
    case Command::verify_appendix: {
      if (hi < 3) throw usage_error("verify-appendix needs a range reaching 3");
      if (hi > kAppendixCap)
        throw usage_error("verify-appendix range is capped at 100000000");
      const std::uint64_t start = std::max<std::uint64_t>(lo, 3);
      const arith::ProfileSieve sieve(static_cast<std::uint32_t>(hi));
      const std::size_t blocks = (hi - start) / kAppendixBlock + 1;
      ordered_parallel(
          blocks, workers,
          [&](std::size_t b) {
            const std::uint64_t a = start + b * kAppendixBlock;
            return appendix_shard(sieve, a,
                                  std::min(hi, a + kAppendixBlock - 1));
          },
          emit);
      break;
    }
    case Command::verify_constants: {
      Shard s = named_checks("Constants", bounds::constant_chain());
      emit(s);
      break;
    }
    case Command::verify_thresholds: {
      Shard s = thresholds_shard();
      emit(s);
      break;
    }
    case Command::sweep_bounds: {
      if (hi > kSweepCap)
        throw usage_error("sweep-bounds is limited to q <= 5000");
      double min_ratio = INFINITY, max_ratio = 0.0;
      collect.observer = [&](const TableRow& row) {
        const double r = std::get<double>(row.fields[7].value);
        min_ratio = std::min(min_ratio, r);
        max_ratio = std::max(max_ratio, r);
      };
      ordered_parallel(span, workers,
                       [&](std::size_t i) { return sweep_shard(lo + i); }, emit);
      if (collect.summary.total) {
        collect.summary.extra.push_back({"min_ratio", min_ratio});
        collect.summary.extra.push_back({"max_ratio", max_ratio});
      }
      break;
    }
    case Command::char_table: {
      Shard s = char_table_shard(cfg.q);
      emit(s);
      break;
    }
    case Command::bound: {
      Shard s = bound_shard(cfg.bound);
      emit(s);
      break;
    }
  }
  return collect.summary;
}

}  // namespace burgess::cli
