#include "flock/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "flock/config.hpp"
#include "flock/config_io.hpp"
#include "flock/csv_io.hpp"
#include "flock/errors.hpp"
#include "flock/integrator.hpp"
#include "flock/parallel.hpp"

namespace fs = std::filesystem;

namespace flock {

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string model;
  std::string snapshots;
  std::uint64_t seed = 0;
  int n = 0;
  int metrics_stride = 0;
  int trace_stride = 0;
  double dt = 0.0;
  double t_end = 0.0;
  double k = 0.0;
};

void add_common_options(CLI::App* sub, CommonOpts& opts, bool with_model,
                        bool with_seed) {
  sub->add_option("--config", opts.config_path, "key=value config file");
  sub->add_option("--out-dir", opts.out_dir, "output directory (default: out)");
  if (with_model) {
    sub->add_option("--model", opts.model,
                    "pos_vel | position | position_no_threshold");
  }
  if (with_seed) sub->add_option("--seed", opts.seed, "PRNG seed");
  sub->add_option("--n", opts.n, "agent count");
  sub->add_option("--dt", opts.dt, "integration step, s");
  sub->add_option("--t-end", opts.t_end, "duration, s");
  sub->add_option("--k", opts.k, "threshold coefficient, 1/s");
  sub->add_option("--metrics-stride", opts.metrics_stride,
                  "emit a metrics row every j-th step");
  sub->add_option("--trace-stride", opts.trace_stride,
                  "emit trajectory rows every j-th step (0 = off)");
  sub->add_option("--snapshots", opts.snapshots,
                  "comma-separated snapshot times, e.g. 0,25,50");
}

bool flag_given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* opt = sub->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

ConfigOverrides overrides_from(const CLI::App* sub, const CommonOpts& opts) {
  ConfigOverrides ov;
  if (flag_given(sub, "--model")) ov.model = opts.model;
  if (flag_given(sub, "--seed")) ov.seed = opts.seed;
  if (flag_given(sub, "--n")) ov.n = opts.n;
  if (flag_given(sub, "--dt")) ov.dt = opts.dt;
  if (flag_given(sub, "--t-end")) ov.t_end = opts.t_end;
  if (flag_given(sub, "--k")) ov.k = opts.k;
  if (flag_given(sub, "--metrics-stride")) ov.metrics_stride = opts.metrics_stride;
  if (flag_given(sub, "--trace-stride")) ov.trace_stride = opts.trace_stride;
  if (flag_given(sub, "--snapshots")) ov.snapshot_times = opts.snapshots;
  return ov;
}

SimConfig resolve_config(const CommonOpts& opts, const ConfigOverrides& ov) {
  if (!opts.config_path.empty()) return load_config(opts.config_path, ov);
  return parse_config("", ov);
}

struct RunArtifacts {
  RunSummary summary;
  std::vector<MetricsRow> rows;
};

// One full experiment into out_dir: metrics.csv, snapshot files, optional
// trace.csv, and a replayable manifest.
RunArtifacts execute_run(const SimConfig& config, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory: " + out_dir.string() + " (" +
                  ec.message() + ")");
  }

  RunArtifacts result;
  std::string snapshot_names;
  std::optional<TraceWriter> trace;
  if (config.trace_stride >= 1) trace.emplace(out_dir / "trace.csv", config.m);

  RunSinks sinks;
  sinks.on_metrics = [&](const MetricsRow& row) { result.rows.push_back(row); };
  sinks.on_snapshot = [&](const SimState& state, double label) {
    const std::string name = snapshot_filename(label);
    write_snapshot_csv(out_dir / name, state);
    if (!snapshot_names.empty()) snapshot_names += ',';
    snapshot_names += name;
  };
  if (trace) {
    sinks.on_state = [&](const SimState& state) {
      if (state.step_index % config.trace_stride == 0) trace->add_state(state);
    };
  }

  result.summary = run(config, sinks);
  if (trace) trace->finish();
  write_metrics_csv(out_dir / "metrics.csv", result.rows);

  std::vector<std::pair<std::string, std::string>> artifacts;
  artifacts.emplace_back("metrics", "metrics.csv");
  artifacts.emplace_back("snapshots", snapshot_names);
  if (trace) artifacts.emplace_back("trace", "trace.csv");
  write_manifest(out_dir / "manifest.txt", config, artifacts);
  return result;
}

struct WindowStats {
  std::optional<double> gamma_mean;
  std::optional<double> min_sep_mean;
};

// Means over samples with t in [t0, t1]; absent fields are skipped.
WindowStats window_stats(const std::vector<MetricsRow>& rows, double t0, double t1) {
  double gamma_sum = 0.0;
  double sep_sum = 0.0;
  long gamma_count = 0;
  long sep_count = 0;
  for (const MetricsRow& row : rows) {
    if (row.t < t0 || row.t > t1) continue;
    if (row.gamma) {
      gamma_sum += *row.gamma;
      ++gamma_count;
    }
    if (row.min_sep) {
      sep_sum += *row.min_sep;
      ++sep_count;
    }
  }
  WindowStats stats;
  if (gamma_count > 0) stats.gamma_mean = gamma_sum / static_cast<double>(gamma_count);
  if (sep_count > 0) stats.min_sep_mean = sep_sum / static_cast<double>(sep_count);
  return stats;
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", *v);
  return buf;
}

int run_command(const CommonOpts& opts, const ConfigOverrides& ov) {
  const SimConfig config = resolve_config(opts, ov);
  const RunArtifacts result = execute_run(config, opts.out_dir);
  std::printf("run complete: model=%s n=%d seed=%llu steps=%lld metrics_rows=%lld\n",
              to_string(config.model), config.n,
              static_cast<unsigned long long>(config.seed),
              static_cast<long long>(result.summary.steps),
              static_cast<long long>(result.summary.metrics_rows));
  std::printf("final_gamma=%s final_min_sep=%s wall_s=%.3f\n",
              fmt_opt(result.summary.final_gamma).c_str(),
              fmt_opt(result.summary.final_min_sep).c_str(),
              result.summary.wall_seconds);
  std::printf("artifacts in %s\n", opts.out_dir.c_str());
  return 0;
}

int compare_command(const CommonOpts& opts, const ConfigOverrides& ov) {
  const SimConfig base = resolve_config(opts, ov);
  constexpr ModelKind kModels[] = {ModelKind::kPosVel, ModelKind::kPosition,
                                   ModelKind::kPositionNoThreshold};
  const double late_start = 0.5 * base.t_end;

  std::string csv = "model,final_gamma,late_gamma_mean,late_min_sep_mean\n";
  std::printf("%-22s  %12s  %16s  %18s\n", "model", "final_gamma",
              "late_gamma_mean", "late_min_sep_mean");
  for (ModelKind kind : kModels) {
    SimConfig config = base;
    config.model = kind;
    const fs::path dir = fs::path(opts.out_dir) / to_string(kind);
    const RunArtifacts result = execute_run(config, dir);
    const WindowStats late = window_stats(result.rows, late_start, base.t_end);
    csv += std::string(to_string(kind)) + "," +
           (result.summary.final_gamma ? format_real(*result.summary.final_gamma) : "") +
           "," + (late.gamma_mean ? format_real(*late.gamma_mean) : "") + "," +
           (late.min_sep_mean ? format_real(*late.min_sep_mean) : "") + "\n";
    std::printf("%-22s  %12s  %16s  %18s\n", to_string(kind),
                fmt_opt(result.summary.final_gamma).c_str(),
                fmt_opt(late.gamma_mean).c_str(), fmt_opt(late.min_sep_mean).c_str());
  }

  const fs::path csv_path = fs::path(opts.out_dir) / "compare.csv";
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + csv_path.string());
  out << csv;
  out.flush();
  if (!out) throw IoError("write failed: " + csv_path.string());
  return 0;
}

struct SeedResult {
  std::uint64_t seed = 0;
  RunSummary summary;
  WindowStats late;
};

void append_aggregate(std::string& csv, const char* name,
                      const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  long count = 0;
  for (const auto& v : values) {
    if (!v) continue;
    if (count == 0) {
      lo = hi = *v;
    } else {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
    sum += *v;
    ++count;
  }
  csv += name;
  if (count > 0) {
    csv += "," + format_real(sum / static_cast<double>(count)) + "," +
           format_real(lo) + "," + format_real(hi);
  } else {
    csv += ",,,";
  }
  csv += "," + std::to_string(count) + "\n";
}

int sweep_command(const CommonOpts& opts, const ConfigOverrides& ov,
                  const std::string& seeds_text) {
  const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_text);
  const SimConfig base = resolve_config(opts, ov);
  const double late_start = 0.5 * base.t_end;

  // Seeds are independent runs writing to disjoint directories, so they may
  // execute in parallel; results are gathered in seed order.
  std::vector<SeedResult> results(seeds.size());
  parallel_for(static_cast<std::int64_t>(seeds.size()), 1, [&](std::int64_t idx) {
    const std::size_t i = static_cast<std::size_t>(idx);
    SimConfig config = base;
    config.seed = seeds[i];
    const fs::path dir =
        fs::path(opts.out_dir) / ("seed_" + std::to_string(seeds[i]));
    const RunArtifacts artifact = execute_run(config, dir);
    results[i] = {seeds[i], artifact.summary,
                  window_stats(artifact.rows, late_start, base.t_end)};
  });

  std::string csv = "seed,final_gamma,late_gamma_mean,late_min_sep_mean\n";
  std::printf("%-12s  %12s  %16s  %18s\n", "seed", "final_gamma",
              "late_gamma_mean", "late_min_sep_mean");
  std::vector<std::optional<double>> final_gammas, late_gammas, late_seps;
  for (const SeedResult& res : results) {
    csv += std::to_string(res.seed) + "," +
           (res.summary.final_gamma ? format_real(*res.summary.final_gamma) : "") +
           "," + (res.late.gamma_mean ? format_real(*res.late.gamma_mean) : "") +
           "," + (res.late.min_sep_mean ? format_real(*res.late.min_sep_mean) : "") +
           "\n";
    std::printf("%-12llu  %12s  %16s  %18s\n",
                static_cast<unsigned long long>(res.seed),
                fmt_opt(res.summary.final_gamma).c_str(),
                fmt_opt(res.late.gamma_mean).c_str(),
                fmt_opt(res.late.min_sep_mean).c_str());
    final_gammas.push_back(res.summary.final_gamma);
    late_gammas.push_back(res.late.gamma_mean);
    late_seps.push_back(res.late.min_sep_mean);
  }

  std::string agg = "metric,mean,min,max,count\n";
  append_aggregate(agg, "final_gamma", final_gammas);
  append_aggregate(agg, "late_gamma_mean", late_gammas);
  append_aggregate(agg, "late_min_sep_mean", late_seps);

  const fs::path summary_path = fs::path(opts.out_dir) / "sweep_summary.csv";
  const fs::path agg_path = fs::path(opts.out_dir) / "sweep_aggregate.csv";
  for (const auto& [path, body] :
       {std::pair{summary_path, csv}, std::pair{agg_path, agg}}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << body;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
  }
  std::printf("aggregate over %zu seeds written to %s\n", seeds.size(),
              agg_path.string().c_str());
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"deterministic multi-agent flocking simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  CLI::App* run_sub = app.add_subcommand("run", "single experiment");
  add_common_options(run_sub, run_opts, /*with_model=*/true, /*with_seed=*/true);

  CommonOpts cmp_opts;
  CLI::App* cmp_sub = app.add_subcommand(
      "compare", "run all three models on one seed and summarize");
  add_common_options(cmp_sub, cmp_opts, /*with_model=*/false, /*with_seed=*/true);

  CommonOpts sweep_opts;
  std::string seeds_text;
  CLI::App* sweep_sub = app.add_subcommand(
      "sweep-seeds", "repeat a configuration across a seed list");
  add_common_options(sweep_sub, sweep_opts, /*with_model=*/true, /*with_seed=*/false);
  sweep_sub->add_option("--seeds", seeds_text, "seed list: a..b or s1,s2,...")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_sub->parsed()) {
      return run_command(run_opts, overrides_from(run_sub, run_opts));
    }
    if (cmp_sub->parsed()) {
      return compare_command(cmp_opts, overrides_from(cmp_sub, cmp_opts));
    }
    return sweep_command(sweep_opts, overrides_from(sweep_sub, sweep_opts),
                         seeds_text);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const InitError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("flocksim");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace flock
