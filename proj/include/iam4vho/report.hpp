#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "iam4vho/core.hpp"
#include "iam4vho/metrics.hpp"
#include "iam4vho/trace.hpp"

namespace iam4vho {

// One report row. `mode` is free text so that `compare` can emit delta and
// aggregate rows with the same columns.
struct ReportRow {
  std::uint64_t seed = 0;
  std::string mode;
  std::int64_t packets_generated = 0;
  std::int64_t packets_lost = 0;
  double loss_ratio = 0.0;
  double mean_latency_s = 0.0;
  double max_latency_s = 0.0;
  std::int64_t sessions_total = 0;
  std::int64_t sessions_rejected = 0;
  double rejection_probability = 0.0;
  double mean_wait_imperative_s = 0.0;
  double mean_wait_alternative_s = 0.0;

  bool operator==(const ReportRow&) const = default;
};

inline constexpr std::array<std::string_view, 12> kReportColumns = {
    "seed",           "mode",           "packets_generated",     "packets_lost",
    "loss_ratio",     "mean_latency_s", "max_latency_s",         "sessions_total",
    "sessions_rejected", "rejection_probability", "mean_wait_imperative_s", "mean_wait_alternative_s"};

inline ReportRow make_row(std::uint64_t seed, std::string mode, const MetricsReport& m) {
  ReportRow r;
  r.seed = seed;
  r.mode = std::move(mode);
  r.packets_generated = m.packets_generated;
  r.packets_lost = m.packets_lost;
  r.loss_ratio = m.loss_ratio;
  r.mean_latency_s = m.mean_latency_s;
  r.max_latency_s = m.max_latency_s;
  r.sessions_total = m.sessions_total;
  r.sessions_rejected = m.sessions_rejected;
  r.rejection_probability = m.rejection_probability;
  r.mean_wait_imperative_s = m.mean_wait_imperative_s;
  r.mean_wait_alternative_s = m.mean_wait_alternative_s;
  return r;
}

//-----------------------------------------------------------------------------
// CSV
//-----------------------------------------------------------------------------

inline void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) os << (i ? "," : "") << kReportColumns[i];
  os << '\n';
  for (const auto& r : rows) {
    os << r.seed << ',' << r.mode << ',' << r.packets_generated << ',' << r.packets_lost << ','
       << format_double(r.loss_ratio) << ',' << format_double(r.mean_latency_s) << ','
       << format_double(r.max_latency_s) << ',' << r.sessions_total << ',' << r.sessions_rejected << ','
       << format_double(r.rejection_probability) << ',' << format_double(r.mean_wait_imperative_s) << ','
       << format_double(r.mean_wait_alternative_s) << '\n';
  }
}

inline std::string to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

namespace detail {

template <typename T>
T parse_number(std::string_view s, std::size_t line, std::string_view column) {
  T v{};
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw Error("csv line " + std::to_string(line) + ": bad " + std::string(column) + " '" +
                std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace detail

inline std::vector<ReportRow> parse_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  for (auto line : detail::split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto cells = detail::split(line, ',');
    if (cells.size() != kReportColumns.size()) {
      throw Error("csv line " + std::to_string(line_no) + ": expected " +
                  std::to_string(kReportColumns.size()) + " columns, got " + std::to_string(cells.size()));
    }
    if (!header_seen) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] != kReportColumns[i]) throw Error("csv header mismatch at column " + std::to_string(i));
      }
      header_seen = true;
      continue;
    }
    using detail::parse_number;
    ReportRow r;
    r.seed = parse_number<std::uint64_t>(cells[0], line_no, kReportColumns[0]);
    r.mode = std::string(cells[1]);
    r.packets_generated = parse_number<std::int64_t>(cells[2], line_no, kReportColumns[2]);
    r.packets_lost = parse_number<std::int64_t>(cells[3], line_no, kReportColumns[3]);
    r.loss_ratio = parse_number<double>(cells[4], line_no, kReportColumns[4]);
    r.mean_latency_s = parse_number<double>(cells[5], line_no, kReportColumns[5]);
    r.max_latency_s = parse_number<double>(cells[6], line_no, kReportColumns[6]);
    r.sessions_total = parse_number<std::int64_t>(cells[7], line_no, kReportColumns[7]);
    r.sessions_rejected = parse_number<std::int64_t>(cells[8], line_no, kReportColumns[8]);
    r.rejection_probability = parse_number<double>(cells[9], line_no, kReportColumns[9]);
    r.mean_wait_imperative_s = parse_number<double>(cells[10], line_no, kReportColumns[10]);
    r.mean_wait_alternative_s = parse_number<double>(cells[11], line_no, kReportColumns[11]);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw Error("csv: missing header");
  return rows;
}

//-----------------------------------------------------------------------------
// JSON mirror
//-----------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const ReportRow& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["mode"] = r.mode;
  j["packets_generated"] = r.packets_generated;
  j["packets_lost"] = r.packets_lost;
  j["loss_ratio"] = r.loss_ratio;
  j["mean_latency_s"] = r.mean_latency_s;
  j["max_latency_s"] = r.max_latency_s;
  j["sessions_total"] = r.sessions_total;
  j["sessions_rejected"] = r.sessions_rejected;
  j["rejection_probability"] = r.rejection_probability;
  j["mean_wait_imperative_s"] = r.mean_wait_imperative_s;
  j["mean_wait_alternative_s"] = r.mean_wait_alternative_s;
  return j;
}

inline ReportRow row_from_json(const nlohmann::json& j) {
  ReportRow r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mode = j.at("mode").get<std::string>();
  r.packets_generated = j.at("packets_generated").get<std::int64_t>();
  r.packets_lost = j.at("packets_lost").get<std::int64_t>();
  r.loss_ratio = j.at("loss_ratio").get<double>();
  r.mean_latency_s = j.at("mean_latency_s").get<double>();
  r.max_latency_s = j.at("max_latency_s").get<double>();
  r.sessions_total = j.at("sessions_total").get<std::int64_t>();
  r.sessions_rejected = j.at("sessions_rejected").get<std::int64_t>();
  r.rejection_probability = j.at("rejection_probability").get<double>();
  r.mean_wait_imperative_s = j.at("mean_wait_imperative_s").get<double>();
  r.mean_wait_alternative_s = j.at("mean_wait_alternative_s").get<double>();
  return r;
}

inline void write_json(std::ostream& os, const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  os << arr.dump(2) << '\n';
}

inline std::vector<ReportRow> parse_json_report(std::string_view text) {
  std::vector<ReportRow> rows;
  for (const auto& j : nlohmann::json::parse(text)) rows.push_back(row_from_json(j));
  return rows;
}

enum class ReportFormat { Csv, Json };

inline void write_report(std::ostream& os, const std::vector<ReportRow>& rows, ReportFormat f) {
  if (f == ReportFormat::Csv) {
    write_csv(os, rows);
  } else {
    write_json(os, rows);
  }
}

}  // namespace iam4vho
