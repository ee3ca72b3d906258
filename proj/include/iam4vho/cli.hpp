#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "iam4vho/engine.hpp"
#include "iam4vho/report.hpp"
#include "iam4vho/scenario.hpp"

namespace iam4vho {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitRuntime = 3 };

inline constexpr const char* kOutDirEnv = "IAM4VHO_OUT_DIR";

class OutputError : public Error {
 public:
  using Error::Error;
};

struct PairedRun {
  std::uint64_t seed = 0;
  ReportRow iam;
  ReportRow baseline;
};

inline ReportRow delta_row(const PairedRun& p) {
  const ReportRow& a = p.iam;
  const ReportRow& b = p.baseline;
  ReportRow d;
  d.seed = p.seed;
  d.mode = "delta";
  d.packets_generated = a.packets_generated - b.packets_generated;
  d.packets_lost = a.packets_lost - b.packets_lost;
  d.loss_ratio = a.loss_ratio - b.loss_ratio;
  d.mean_latency_s = a.mean_latency_s - b.mean_latency_s;
  d.max_latency_s = a.max_latency_s - b.max_latency_s;
  d.sessions_total = a.sessions_total - b.sessions_total;
  d.sessions_rejected = a.sessions_rejected - b.sessions_rejected;
  d.rejection_probability = a.rejection_probability - b.rejection_probability;
  d.mean_wait_imperative_s = a.mean_wait_imperative_s - b.mean_wait_imperative_s;
  d.mean_wait_alternative_s = a.mean_wait_alternative_s - b.mean_wait_alternative_s;
  return d;
}

// Mean of the delta rows. Integer columns are rounded toward zero; `seed`
// carries the number of pairs.
inline ReportRow aggregate_row(const std::vector<ReportRow>& deltas) {
  ReportRow g;
  g.mode = "mean_delta";
  g.seed = deltas.size();
  if (deltas.empty()) return g;
  const double n = static_cast<double>(deltas.size());
  double gen = 0, lost = 0, tot = 0, rej = 0;
  for (const auto& d : deltas) {
    gen += static_cast<double>(d.packets_generated);
    lost += static_cast<double>(d.packets_lost);
    tot += static_cast<double>(d.sessions_total);
    rej += static_cast<double>(d.sessions_rejected);
    g.loss_ratio += d.loss_ratio / n;
    g.mean_latency_s += d.mean_latency_s / n;
    g.max_latency_s += d.max_latency_s / n;
    g.rejection_probability += d.rejection_probability / n;
    g.mean_wait_imperative_s += d.mean_wait_imperative_s / n;
    g.mean_wait_alternative_s += d.mean_wait_alternative_s / n;
  }
  g.packets_generated = static_cast<std::int64_t>(gen / n);
  g.packets_lost = static_cast<std::int64_t>(lost / n);
  g.sessions_total = static_cast<std::int64_t>(tot / n);
  g.sessions_rejected = static_cast<std::int64_t>(rej / n);
  return g;
}

// Runs both modes for seeds [first, first + count) on up to `jobs` threads.
// Each replication owns its world; results land in seed order.
inline std::vector<PairedRun> run_paired(const Scenario& sc, std::uint64_t first, std::size_t count,
                                         unsigned jobs) {
  std::vector<PairedRun> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const std::uint64_t seed = first + i;
      out[i].seed = seed;
      out[i].iam = make_row(seed, "iam4vho", run_scenario(sc, Mode::Iam4vho, seed).metrics);
      out[i].baseline = make_row(seed, "baseline", run_scenario(sc, Mode::Baseline, seed).metrics);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  return out;
}

namespace detail {

// Relative output paths resolve against the output directory from the
// environment when it is set.
inline std::filesystem::path output_path(const std::string& arg) {
  std::filesystem::path p(arg);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
  }
  return p;
}

inline std::optional<std::filesystem::path> default_output(const std::string& name) {
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return std::filesystem::path(dir) / name;
  return std::nullopt;
}

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw OutputError("cannot write " + path.string());
  body(f);
  f.flush();
  if (!f) throw OutputError("write failed: " + path.string());
}

}  // namespace detail

// Entry point for the command-line driver. `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"Vertical handover simulator", "iam4vho"};
  app.require_subcommand(1);

  std::string file;
  std::string mode_arg = "iam4vho";
  std::uint64_t seed = 1;
  std::string trace_out;
  std::string metrics_out;
  std::string format_arg = "csv";
  std::size_t seeds = 30;
  std::uint64_t first_seed = 1;
  std::string compare_out;
  std::string raw_out;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* validate = app.add_subcommand("validate", "Load and validate a scenario file");
  validate->add_option("file", file, "Scenario file")->required();

  auto* run = app.add_subcommand("run", "Run one simulation");
  run->add_option("file", file, "Scenario file")->required();
  run->add_option("--mode", mode_arg, "iam4vho or baseline")
      ->check(CLI::IsMember({"iam4vho", "baseline"}));
  run->add_option("--seed", seed, "Random seed");
  run->add_option("--trace", trace_out, "Write the event trace to this file");
  run->add_option("--metrics", metrics_out, "Write the metrics report to this file");
  run->add_option("--format", format_arg, "Report format: csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* compare = app.add_subcommand("compare", "Paired runs of both modes over a seed range");
  compare->add_option("file", file, "Scenario file")->required();
  compare->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
  compare->add_option("--first-seed", first_seed, "First seed");
  compare->add_option("--out", compare_out, "Write per-seed and aggregate deltas to this file");
  compare->add_option("--raw", raw_out, "Write the per-mode rows to this file");
  compare->add_option("--jobs", jobs, "Parallel replications")->check(CLI::PositiveNumber);
  compare->add_option("--format", format_arg, "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  const ReportFormat fmt = format_arg == "json" ? ReportFormat::Json : ReportFormat::Csv;
  const std::string ext = format_arg == "json" ? ".json" : ".csv";

  Scenario sc;
  try {
    sc = load_scenario(file);
  } catch (const ValidationError& e) {
    err << "validation error at " << e.path << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*validate) {
      out << "ok: " << sc.rats.size() << " rats, " << sc.mus.size() << " mus, " << sc.stimuli.size()
          << " stimuli\n";
      return kExitOk;
    }

    if (*run) {
      const Mode mode = *parse_mode(mode_arg);
      const RunResult r = run_scenario(sc, mode, seed);
      const std::vector<ReportRow> rows{make_row(seed, mode_arg, r.metrics)};
      if (!trace_out.empty()) {
        detail::write_file(detail::output_path(trace_out), [&](std::ostream& os) { r.trace.write(os); });
      }
      std::optional<std::filesystem::path> mpath;
      if (!metrics_out.empty()) {
        mpath = detail::output_path(metrics_out);
      } else {
        mpath = detail::default_output("metrics_" + mode_arg + "_" + std::to_string(seed) + ext);
      }
      if (mpath) {
        detail::write_file(*mpath, [&](std::ostream& os) { write_report(os, rows, fmt); });
      } else {
        write_report(out, rows, fmt);
      }
      return kExitOk;
    }

    const std::vector<PairedRun> pairs = run_paired(sc, first_seed, seeds, jobs);
    std::vector<ReportRow> deltas;
    std::vector<ReportRow> raw;
    for (const auto& p : pairs) {
      deltas.push_back(delta_row(p));
      raw.push_back(p.iam);
      raw.push_back(p.baseline);
    }
    std::vector<ReportRow> rows = deltas;
    rows.push_back(aggregate_row(deltas));

    std::optional<std::filesystem::path> cpath =
        compare_out.empty() ? detail::default_output("compare" + ext) : detail::output_path(compare_out);
    if (cpath) {
      detail::write_file(*cpath, [&](std::ostream& os) { write_report(os, rows, fmt); });
    } else {
      write_report(out, rows, fmt);
    }
    if (!raw_out.empty()) {
      detail::write_file(detail::output_path(raw_out), [&](std::ostream& os) { write_report(os, raw, fmt); });
    }
    return kExitOk;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "simulation error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace iam4vho
