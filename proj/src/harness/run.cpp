#include <cstdlib>
#include <fstream>
#include <iostream>

#include <unistd.h>

#include <fmt/format.h>

#include "burgess/harness.hpp"

namespace burgess::cli {

namespace {

// Creates the writer on first use, so a suite that rejects its
// configuration before producing anything leaves the output untouched.
class LazySink final : public RecordSink {
 public:
  LazySink(const RunConfig& config, std::ostream& out)
      : config_(config), out_(out) {}

  void record(const VerificationRecord& r) override { writer().record(r); }
  void row(const TableRow& r) override { writer().row(r); }
  void finish(const Summary& s) { writer().finish(s); }

 private:
  OutputWriter& writer() {
    if (!writer_) writer_ = make_writer(config_, out_);
    return *writer_;
  }

  const RunConfig& config_;
  std::ostream& out_;
  std::unique_ptr<OutputWriter> writer_;
};

bool use_color(const std::ostream& err) {
  if (std::getenv("NO_COLOR")) return false;
  return &err == &std::cerr && ::isatty(STDERR_FILENO);
}

std::string summary_line(const RunConfig& cfg, const Summary& s) {
  std::string line = fmt::format("{}: {} records, {} held, {} failed",
                                 command_name(cfg.command), s.total, s.held,
                                 s.failed);
  if (s.min_margin) line += ", min margin " + format_double(*s.min_margin);
  for (const auto& f : s.extra) {
    line += ", " + f.key + " ";
    if (const auto* d = std::get_if<double>(&f.value))
      line += format_double(*d);
  }
  return line;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* dest = &out;
  if (config.output != "-") {
    file.open(config.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file '" << config.output << "'\n";
      return 2;
    }
    dest = &file;
  }

  LazySink sink(config, *dest);
  Summary summary;
  try {
    summary = execute(config, sink);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  sink.finish(summary);

  const std::string line = summary_line(config, summary);
  if (use_color(err))
    err << (summary.ok() ? "\033[32m" : "\033[31m") << line << "\033[0m\n";
  else
    err << line << '\n';
  return summary.ok() ? 0 : 1;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_args(args, out);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }
  if (!config) return 0;
  return run(*config, out, err);
}

}  // namespace burgess::cli
