#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "burgess/harness.hpp"

namespace burgess::cli {

namespace {

using json = nlohmann::ordered_json;

bool is_verification(Command c) {
  switch (c) {
    case Command::sweep_bounds:
    case Command::char_table:
    case Command::bound:
      return false;
    default:
      return true;
  }
}

std::string render(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>)
          return x;
        else if constexpr (std::is_same_v<T, bool>)
          return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, double>)
          return format_double(x);
        else
          return std::to_string(x);
      },
      v);
}

json to_json(const Value& v) {
  return std::visit([](const auto& x) { return json(x); }, v);
}

json to_json(const std::vector<Field>& fields) {
  json obj = json::object();
  for (const auto& f : fields) obj[f.key] = to_json(f.value);
  return obj;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvWriter final : public OutputWriter {
 public:
  CsvWriter(Command command, std::ostream& out) : out_(out) {
    write_line(csv_columns(command));
  }

  void record(const VerificationRecord& r) override {
    write_line({r.statement, format_instance(r.instance), format_double(r.lhs),
                format_double(r.rhs), r.holds ? "true" : "false",
                format_double(r.margin)});
  }

  void row(const TableRow& r) override {
    std::vector<std::string> cells;
    cells.reserve(r.fields.size());
    for (const auto& f : r.fields) cells.push_back(render(f.value));
    write_line(cells);
  }

  void finish(const Summary&) override { out_.flush(); }

 private:
  void write_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += csv_quote(cells[i]);
    }
    line += '\n';
    out_ << line;
  }

  std::ostream& out_;
};

class JsonWriter final : public OutputWriter {
 public:
  JsonWriter(const RunConfig& config, std::ostream& out) : out_(out) {
    json meta = json::object();
    meta["command"] = std::string(command_name(config.command));
    switch (config.command) {
      case Command::char_table:
        meta["q"] = config.q;
        break;
      case Command::bound:
        meta["log_q"] = config.bound.log_q;
        meta["log_n"] = config.bound.log_n;
        meta["omega"] = config.bound.omega;
        meta["d"] = config.bound.d;
        meta["phi_ratio"] = config.bound.phi_ratio;
        meta["relaxed"] = config.bound.relaxed;
        break;
      case Command::verify_constants:
      case Command::verify_thresholds:
        break;
      default:
        meta["q_range"] = json::array({config.q_range.lo, config.q_range.hi});
        meta["seed"] = config.seed;
        meta["samples"] = config.samples;
        break;
    }
    meta["failures_only"] = config.failures_only;
    out_ << "{\"meta\":" << meta.dump() << ",\"records\":[";
  }

  void record(const VerificationRecord& r) override {
    json obj = json::object();
    obj["statement"] = r.statement;
    obj["instance"] = to_json(r.instance);
    obj["lhs"] = r.lhs;
    obj["rhs"] = r.rhs;
    obj["holds"] = r.holds;
    obj["margin"] = r.margin;
    emit(obj);
  }

  void row(const TableRow& r) override { emit(to_json(r.fields)); }

  void finish(const Summary& s) override {
    json summary = json::object();
    summary["total"] = s.total;
    summary["held"] = s.held;
    summary["failed"] = s.failed;
    summary["min_margin"] =
        s.min_margin ? json(*s.min_margin) : json(nullptr);
    for (const auto& f : s.extra) summary[f.key] = to_json(f.value);
    out_ << "],\"summary\":" << summary.dump() << "}\n";
    out_.flush();
  }

 private:
  void emit(const json& obj) {
    if (!first_) out_ << ',';
    first_ = false;
    out_ << obj.dump();
  }

  std::ostream& out_;
  bool first_ = true;
};

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string format_instance(const std::vector<Field>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ';';
    out += fields[i].key;
    out += '=';
    out += render(fields[i].value);
  }
  return out;
}

std::vector<std::string> csv_columns(Command c) {
  if (is_verification(c))
    return {"statement", "instance", "lhs", "rhs", "holds", "margin"};
  switch (c) {
    case Command::sweep_bounds:
      return {"q",       "chi",       "N",
              "measured", "trivial",  "pv_shape",
              "theorem_relaxed", "ratio", "holds"};
    case Command::char_table:
      return {"index", "exponents", "order", "conductor", "primitive",
              "parity"};
    default:
      return {"name", "value", "log_value", "log10_value", "in_hypothesis"};
  }
}

std::unique_ptr<OutputWriter> make_writer(const RunConfig& config,
                                          std::ostream& out) {
  if (config.format == Format::json)
    return std::make_unique<JsonWriter>(config, out);
  return std::make_unique<CsvWriter>(config.command, out);
}

}  // namespace burgess::cli
