#pragma once

// Command-line verification harness: run configuration, the record
// stream every suite produces, and the CSV/JSON writers.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace burgess::cli {

enum class Command {
  verify_prop21,
  verify_lemma32,
  verify_lemma31,
  verify_vstats,
  verify_appendix,
  verify_constants,
  verify_thresholds,
  sweep_bounds,
  char_table,
  bound,
};

enum class Format { csv, json };

struct QRange {
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
};

struct BoundArgs {
  double log_q = 0.0;
  double log_n = 0.0;
  int omega = 0;
  std::uint64_t d = 1;
  double phi_ratio = 1.0;
  bool relaxed = false;
};

struct RunConfig {
  Command command = Command::verify_constants;
  QRange q_range;
  std::uint64_t seed = 20200101;
  std::uint64_t samples = 0;
  Format format = Format::csv;
  std::string output = "-";
  unsigned parallelism = 0;
  bool failures_only = false;
  std::uint64_t q = 0;
  BoundArgs bound;
};

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Default q range and sample count for a command.
RunConfig default_config(Command c);

/// "lo..hi"; throws usage_error when malformed or empty.
QRange parse_q_range(std::string_view text);

/// "a/b" or a decimal; throws usage_error.
double parse_ratio(std::string_view text);

/// Parses argv (without the program name). Returns nullopt after printing
/// help to `out`. Throws usage_error on invalid input.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args,
                                    std::ostream& out);

using Value = std::variant<std::int64_t, std::uint64_t, double, bool,
                           std::string>;

struct Field {
  std::string key;
  Value value;
};

struct VerificationRecord {
  std::string statement;
  std::vector<Field> instance;
  double lhs;
  double rhs;
  bool holds;
  double margin;
};

struct Summary {
  std::uint64_t total = 0;
  std::uint64_t held = 0;
  std::uint64_t failed = 0;
  std::optional<double> min_margin;
  /// Extra named statistics (e.g. ratio extremes for the sweep).
  std::vector<Field> extra;

  bool ok() const { return failed == 0; }
};

/// A row of a tabulating command (sweep-bounds, char-table, bound).
/// holds and margin feed the summary when the row asserts something.
struct TableRow {
  std::vector<Field> fields;
  std::optional<bool> holds;
  std::optional<double> margin;
};

/// Receives output items one at a time, in final order.
class RecordSink {
 public:
  virtual ~RecordSink() = default;
  virtual void record(const VerificationRecord& r) = 0;
  virtual void row(const TableRow& r) = 0;
};

/// Formats the stream as CSV or JSON; finish() writes any trailer.
class OutputWriter : public RecordSink {
 public:
  virtual void finish(const Summary& summary) = 0;
};

std::unique_ptr<OutputWriter> make_writer(const RunConfig& config,
                                          std::ostream& out);

/// Shortest-exact text for a double: 17 significant digits.
std::string format_double(double v);

/// "key=value;key=value"
std::string format_instance(const std::vector<Field>& fields);

/// Executes the configured suite, streaming items to `sink` (holding
/// records are dropped when failures_only is set) and returning the
/// summary. Throws usage_error for configurations the suite rejects.
Summary execute(const RunConfig& config, RecordSink& sink);

/// Full CLI behaviour: runs, writes the formatted output to `out` (or the
/// configured file), prints the summary line to `err`. Returns the exit
/// status: 0 all hold, 1 some record failed, 2 usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parse + run; used by the executable's main.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

/// Column names for the CSV output of a command, in order.
std::vector<std::string> csv_columns(Command c);

}  // namespace burgess::cli
