// Copyright 2026 The RoboBench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "robobench/error.hpp"
#include "robobench/harness.hpp"
#include "robobench/io.hpp"
#include "robobench/selftest.hpp"
#include "robobench/service/http_server.hpp"
#include "robobench/service/scoring_service.hpp"

namespace fs = std::filesystem;
using namespace robobench;

namespace
{

struct Options
{
  fs::path manifest;
  fs::path submission;
  std::string track;
  std::uint64_t seed = 0;
  std::optional<fs::path> params;
  fs::path out;
  unsigned jobs = 1;
  bool median_scale = false;
  bool micro_average = false;
  std::vector<fs::path> tables;
  fs::path config;
  std::optional<int> port;
};

RunConfig run_config(const Options & o)
{
  RunConfig rc;
  rc.seed = o.seed;
  rc.jobs = o.jobs;
  rc.median_scale = o.median_scale;
  rc.micro_average = o.micro_average;
  return rc;
}

void emit(const fs::path & out, const std::string & text)
{
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_file_atomic(out, text);
  }
}

int run_corrupt(const Options & o)
{
  const ParamsTable params = resolve_params(o.params);
  const Manifest manifest = load_manifest(o.manifest);
  const CorruptReport report = cmd_corrupt(manifest, o.out, run_config(o), params);
  std::cerr << "wrote " << report.samples_written << " samples to " << report.manifest_path.string() << "\n";
  for (const auto & [id, err] : report.failures) {
    std::cerr << "failed: " << id << ": " << err << "\n";
  }
  return report.failures.empty() ? 0 : 1;
}

int run_eval(const Options & o)
{
  const ParamsTable params = resolve_params(o.params);
  const Manifest manifest = load_manifest(o.manifest);
  if (!o.track.empty() && parse_track(o.track) != manifest.track) {
    throw ValidationError(
      "--track " + o.track + " does not match the manifest track " + std::string(format_track(manifest.track)));
  }
  const Submission sub = load_submission(o.submission, manifest.track, &manifest);
  const EvalResult res = cmd_eval(manifest, sub, run_config(o), params);
  for (const auto & w : res.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  emit(o.out, res.table.to_json() + "\n");
  return 0;
}

int run_report(const Options & o)
{
  std::vector<ScoreTable> tables;
  for (const auto & p : o.tables) {
    try {
      tables.push_back(ScoreTable::from_json(io::read_text_file(p)));
    } catch (const ValidationError & e) {
      throw ValidationError(p.string() + ": " + e.what());
    }
  }
  const Leaderboard lb = cmd_report(tables);
  if (o.out.empty()) {
    std::cout << lb.markdown;
    return 0;
  }
  fs::create_directories(o.out);
  io::write_file_atomic(o.out / "leaderboard.csv", lb.csv);
  io::write_file_atomic(o.out / "leaderboard.md", lb.markdown);
  return 0;
}

int run_selftest(const Options & o)
{
  std::optional<ParamsTable> params;
  SelftestInputs in;
  if (o.params || std::getenv("ROBOBENCH_PARAMS")) {
    params = resolve_params(o.params);
    in.params = &*params;
  }
  const SelftestReport report = run_selftest(in);
  for (const auto & c : report.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  std::cout << (report.passed() ? "selftest passed" : "selftest FAILED") << "\n";
  return report.passed() ? 0 : 1;
}

int run_serve(const Options & o)
{
  service::ServiceConfig cfg = service::ServiceConfig::load(o.config);
  if (o.port) {
    cfg.port = *o.port;
  }
  if (o.params) {
    cfg.params = o.params;
  }

  // Route SIGTERM/SIGINT to a dedicated thread; all other threads inherit the mask.
  sigset_t sigs;
  sigemptyset(&sigs);
  sigaddset(&sigs, SIGTERM);
  sigaddset(&sigs, SIGINT);
  pthread_sigmask(SIG_BLOCK, &sigs, nullptr);

  service::ScoringService svc(cfg);
  service::HttpServer http(svc);
  const int port = http.bind(cfg.bind, cfg.port);
  if (port < 0) {
    throw IoError("cannot bind " + cfg.bind + ":" + std::to_string(cfg.port));
  }
  std::cout << "listening on " << cfg.bind << ":" << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&sigs, &sig);
    http.stop();
  });
  waiter.detach();
  const bool ok = http.listen();
  svc.stop();
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"RoboBench robustness benchmark toolkit"};
  app.set_version_flag("--version", toolkit_version());
  app.require_subcommand(1);
  Options o;

  const auto add_params = [&](CLI::App * sc) {
    sc->add_option("--params", o.params, "Corruption parameter table (default: $ROBOBENCH_PARAMS, then built-in)")
      ->check(CLI::ExistingFile);
  };
  const auto add_run = [&](CLI::App * sc) {
    sc->add_option("--seed", o.seed, "Global seed");
    sc->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
    add_params(sc);
  };

  auto * corrupt = app.add_subcommand("corrupt", "Synthesize a corrupted dataset from a clean manifest");
  corrupt->add_option("--manifest", o.manifest, "Input manifest")->required();
  corrupt->add_option("--out", o.out, "Output directory")->required();
  add_run(corrupt);

  auto * eval = app.add_subcommand("eval", "Score a submission against a manifest");
  eval->add_option("--manifest", o.manifest, "Ground-truth manifest")->required();
  eval->add_option("--submission", o.submission, "Submission JSON-lines file")->required();
  eval->add_option("--track", o.track, "Expected track");
  eval->add_option("--out", o.out, "Score table output (default: stdout)");
  eval->add_flag("--median-scale", o.median_scale, "Depth: per-image median scaling");
  eval->add_flag("--micro-average", o.micro_average, "Depth: pool pixels over the dataset");
  add_run(eval);

  auto * report = app.add_subcommand("report", "Rank score tables into CSV and Markdown leaderboards");
  report->add_option("tables", o.tables, "Score table JSON files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", o.out, "Directory for leaderboard.csv/.md (default: Markdown to stdout)");

  auto * selftest = app.add_subcommand("selftest", "Run embedded golden vectors");
  add_params(selftest);

  auto * serve = app.add_subcommand("serve", "Run the scoring service");
  serve->add_option("--config", o.config, "Service config JSON")->required()->check(CLI::ExistingFile);
  serve->add_option("--port", o.port, "Override the configured port (0 = any free port)");
  add_params(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*corrupt) return run_corrupt(o);
    if (*eval) return run_eval(o);
    if (*report) return run_report(o);
    if (*selftest) return run_selftest(o);
    if (*serve) return run_serve(o);
  } catch (const ValidationError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception & e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
