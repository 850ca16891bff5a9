#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "burgess/harness.hpp"

namespace burgess::cli {

namespace {

struct CommandInfo {
  Command command;
  std::string_view name;
};

constexpr CommandInfo kCommands[] = {
    {Command::verify_prop21, "verify-prop21"},
    {Command::verify_lemma32, "verify-lemma32"},
    {Command::verify_lemma31, "verify-lemma31"},
    {Command::verify_vstats, "verify-vstats"},
    {Command::verify_appendix, "verify-appendix"},
    {Command::verify_constants, "verify-constants"},
    {Command::verify_thresholds, "verify-thresholds"},
    {Command::sweep_bounds, "sweep-bounds"},
    {Command::char_table, "char-table"},
    {Command::bound, "bound"},
};

constexpr const char* kSuiteHelp = R"(Commands:
  verify-prop21      For 1 <= A <= q: |A_q - A phi(q)/q| < 2^(omega(q)-1),
                     where A_q counts 1 <= a <= A coprime to q. Exact
                     integer arithmetic. Label "Prop2.1", instance q;A;A_q.
                     Default --q-range 1..3000.
  verify-lemma32     For every primitive chi mod q and 1 <= B < sqrt(q):
                     sum_{l=1..q} |sum_{b=1..B} chi(l+b)|^4
                       <= (7B^2 - 6B) q + 4 8^omega(q) sqrt(q) B^4 d(q)^3.
                     Label "Lemma3.2", instance q;chi;B. Default 1..200.
  verify-lemma31     For every primitive chi mod q and --samples random
                     tuples m with at least three distinct entries:
                     |sum_x chi((x-m1)(x-m2)) conj(chi((x-m3)(x-m4)))|
                       <= 8^omega(q) sqrt(q) max{(q, A_i) : A_i != 0},
                     A_i = prod_{j != i} (m_i - m_j). Instance
                     q;chi;m1;m2;m3;m4;min_ok where min_ok reports whether
                     the smallest (q, A_i) would also suffice. Label
                     "Lemma3.1". Default 1..300, 200 samples per chi.
  verify-vstats      Random (q, M, N) with N <= q^(5/8) and
                     A = floor(N q^(-1/4) / 10) >= 1; v(l) counts pairs
                     (a, n), a <= A coprime to q, M < n <= M+N, n = a l
                     mod q. Checks sum v = A_q N exactly and
                     sum v^2 <= A_q^2 + 2 A N log(2 A_q). Label
                     "MomentV", instance q;M;N;A;A_q;sum_v. Default
                     1..500 with 10000 samples.
  verify-appendix    For 3 <= n in the range:
                       phi(n) > n / (e^gamma loglog n + 3/loglog n),
                       d(n) <= n^(1.066/loglog n),
                       omega(n) <= log n/loglog n + 1.45743 log n/(loglog n)^2.
                     Labels "ThmA.1", "ThmA.2", "ThmA.3", instance n.
                     Default 3..1000000.
  verify-constants   Constant chain at 50 digits: sqrt10/(sqrt10-2) 3.3325
                     in [9.066, 9.07], 9.07 e^(gamma/2) in [12.10, 12.11],
                     3 e^-gamma in [1.684, 1.69], the lambda constant, and
                     sum (2/sqrt10)^k = sqrt10/(sqrt10-2) within 1e-25.
  verify-thresholds  Magnitude of q = e^(e^9.594) (8.03104e6373),
                     q^(1/8)/10 > 5e795, the ninth-root size condition
                     at loglog q = 9.594 (holds) and 2 (fails), and the
                     same condition on a grid of loglog q up to 12.
  sweep-bounds       For each q, primitive chi and N on a log grid up to
                     floor(q^(5/8)): max_{M, N' <= N} |S(M, N')| against
                     the explicit bound evaluated outside its hypothesis.
                     Default 1..1000, at most q = 5000.
  char-table         Characters mod --q.
  bound              Evaluate the explicit bounds at --log-q, --log-n,
                     --omega, --d, --phi-ratio (JSON by default).

CSV columns:
  verify-*      statement,instance,lhs,rhs,holds,margin
                instance is "key=value;key=value"; margin = rhs - lhs
  sweep-bounds  q,chi,N,measured,trivial,pv_shape,theorem_relaxed,ratio,holds
  char-table    index,exponents,order,conductor,primitive,parity
  bound         name,value,log_value,log10_value,in_hypothesis
Floats use 17 significant digits. JSON output is one object with keys
meta, records and summary. --failures-only drops holding records from the
output; the summary still counts them.

Exit status: 0 when every record holds, 1 when any fails, 2 on usage
errors. The summary line goes to stderr; NO_COLOR disables its colour.)";

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw usage_error(std::string("invalid ") + std::string(what) + ": '" +
                      std::string(text) + "'");
  return v;
}

double parse_double(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw usage_error(std::string("invalid ") + std::string(what) + ": '" +
                      std::string(text) + "'");
  }
}

bool is_range_command(Command c) {
  switch (c) {
    case Command::verify_prop21:
    case Command::verify_lemma32:
    case Command::verify_lemma31:
    case Command::verify_vstats:
    case Command::verify_appendix:
    case Command::sweep_bounds:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& info : kCommands)
    if (info.command == c) return info.name;
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& info : kCommands)
    if (info.name == name) return info.command;
  return std::nullopt;
}

RunConfig default_config(Command c) {
  RunConfig cfg;
  cfg.command = c;
  switch (c) {
    case Command::verify_prop21:
      cfg.q_range = {1, 3000};
      break;
    case Command::verify_lemma32:
      cfg.q_range = {1, 200};
      break;
    case Command::verify_lemma31:
      cfg.q_range = {1, 300};
      cfg.samples = 200;
      break;
    case Command::verify_vstats:
      cfg.q_range = {1, 500};
      cfg.samples = 10000;
      break;
    case Command::verify_appendix:
      cfg.q_range = {3, 1000000};
      break;
    case Command::sweep_bounds:
      cfg.q_range = {1, 1000};
      break;
    case Command::bound:
      cfg.format = Format::json;
      break;
    default:
      break;
  }
  return cfg;
}

QRange parse_q_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos)
    throw usage_error("q range must look like LO..HI, got '" +
                      std::string(text) + "'");
  QRange r{parse_u64(text.substr(0, dots), "range start"),
           parse_u64(text.substr(dots + 2), "range end")};
  if (r.lo == 0 || r.lo > r.hi)
    throw usage_error("q range '" + std::string(text) +
                      "' is empty or starts at 0");
  return r;
}

double parse_ratio(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_double(text, "ratio");
  const double num = parse_double(text.substr(0, slash), "ratio numerator");
  const double den = parse_double(text.substr(slash + 1), "ratio denominator");
  if (den == 0.0) throw usage_error("ratio denominator is zero");
  return num / den;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out) {
  CLI::App app{"Explicit Burgess bound verification harness", "burgess"};
  app.footer(kSuiteHelp);
  app.set_help_flag("-h,--help", "Show this help");

  std::string command, q_range, format, phi_ratio;
  std::uint64_t seed = 0, samples = 0, q = 0, d = 1;
  unsigned parallelism = 0;
  int omega = 0;
  double log_q = 0.0, log_n = 0.0;
  std::string output = "-";
  bool failures_only = false, relaxed = false;

  app.add_option("command", command, "Suite to run (see below)")->required();
  auto* o_range = app.add_option("--q-range", q_range, "Inclusive range LO..HI");
  auto* o_seed = app.add_option("--seed", seed, "64-bit seed for sampling");
  auto* o_samples = app.add_option("--samples", samples, "Sample count");
  auto* o_format = app.add_option("--format", format, "csv or json");
  app.add_option("-o,--output", output, "Output file, '-' for stdout");
  app.add_option("-j,--parallelism", parallelism, "Workers, 0 = auto");
  app.add_flag("--failures-only", failures_only,
               "Only write records that fail");
  auto* o_q = app.add_option("--q", q, "Modulus for char-table");
  auto* o_log_q = app.add_option("--log-q", log_q, "log q for bound");
  auto* o_log_n = app.add_option("--log-n", log_n, "log N for bound");
  app.add_option("--omega", omega, "omega(q) for bound");
  app.add_option("--d", d, "d(q) for bound");
  app.add_option("--phi-ratio", phi_ratio, "q/phi(q), decimal or a/b");
  app.add_flag("--relaxed", relaxed, "Evaluate outside the hypothesis");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw usage_error(e.what());
  }

  const auto cmd = parse_command(command);
  if (!cmd) throw usage_error("unknown command '" + command + "'");
  RunConfig cfg = default_config(*cmd);

  if (*o_range) {
    if (!is_range_command(*cmd))
      throw usage_error("--q-range does not apply to " + command);
    cfg.q_range = parse_q_range(q_range);
  }
  if (*o_seed) cfg.seed = seed;
  if (*o_samples) cfg.samples = samples;
  if (*o_format) {
    if (format == "csv")
      cfg.format = Format::csv;
    else if (format == "json")
      cfg.format = Format::json;
    else
      throw usage_error("unknown format '" + format + "'");
  }
  cfg.output = output;
  cfg.parallelism = parallelism;
  cfg.failures_only = failures_only;

  if (*cmd == Command::char_table) {
    if (!*o_q || q == 0) throw usage_error("char-table needs --q >= 1");
    cfg.q = q;
  }
  if (*cmd == Command::bound) {
    if (!*o_log_q || !*o_log_n)
      throw usage_error("bound needs --log-q and --log-n");
    if (omega < 0 || d == 0) throw usage_error("bound needs omega >= 0, d >= 1");
    cfg.bound.log_q = log_q;
    cfg.bound.log_n = log_n;
    cfg.bound.omega = omega;
    cfg.bound.d = d;
    cfg.bound.phi_ratio = phi_ratio.empty() ? 1.0 : parse_ratio(phi_ratio);
    cfg.bound.relaxed = relaxed;
  }
  if (*cmd == Command::verify_vstats && cfg.samples == 0)
    throw usage_error("verify-vstats needs --samples >= 1");
  return cfg;
}

}  // namespace burgess::cli
