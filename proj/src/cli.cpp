#include "lora_ap/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "lora_ap/errors.hpp"
#include "lora_ap/report.hpp"
#include "lora_ap/scenario.hpp"
#include "lora_ap/simulator.hpp"
#include "lora_ap/vectors.hpp"

namespace lora_ap {

namespace {

struct RunOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<double> horizon_s;
  std::optional<std::string> ap;
  std::optional<std::string> attack;
  std::string out_dir = "out";
  std::optional<double> sample_rate_hz;
  bool no_current = false;
};

struct Table2Options {
  double sim_horizon_s = 86400.0;
  std::string kv_path;
};

struct VectorOptions {
  std::string emit_path;
  std::string check_path;
  std::size_t count = 64;
  std::uint64_t seed = 2024;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("write to '" + path.string() + "' failed");
}

int do_run(const RunOptions& o, std::ostream& out) {
  ScenarioConfig cfg = load_scenario(o.scenario);
  if (o.seed) cfg.rng_seed = *o.seed;
  if (o.horizon_s) cfg.horizon = from_seconds(*o.horizon_s);
  if (o.ap) set_ap_enabled(cfg, *o.ap == "on");
  if (o.attack) cfg.attacker.strategy = parse_attack_strategy(*o.attack);
  if (o.sample_rate_hz) cfg.sample_rate_hz = *o.sample_rate_hz;

  const SimulationResult result = run_scenario(cfg);

  const std::filesystem::path dir = o.out_dir;
  std::filesystem::create_directories(dir);
  export_trace(result.trace, dir / "events.csv");
  if (!o.no_current) export_current(result.trace, dir / "current.csv", cfg.sample_rate_hz);
  const std::string report = render_report_text(cfg, result);
  write_text(dir / "report.txt", report);
  write_text(dir / "report.kv", render_report_kv(cfg, result));
  out << report << "outputs written to " << dir.string() << "\n";
  return 0;
}

int do_table2(const Table2Options& o, std::ostream& out) {
  const auto r = compute_table2(AnnualDrainTable{}, from_seconds(o.sim_horizon_s));
  out << render_table2(r);
  if (!o.kv_path.empty()) write_text(o.kv_path, render_table2_kv(r));
  return 0;
}

int do_vectors(const VectorOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.check_path.empty()) {
    std::ifstream in(o.check_path);
    if (!in) {
      err << "error: cannot open '" << o.check_path << "'\n";
      return 1;
    }
    const auto vectors = read_vectors(in);
    const auto bad = check_vectors(vectors);
    for (auto i : bad) err << "mismatch: vector " << i << " token " << vectors[i].token << "\n";
    out << vectors.size() - bad.size() << "/" << vectors.size() << " vectors match\n";
    return bad.empty() && !vectors.empty() ? 0 : 1;
  }
  const auto vectors = generate_vectors(o.count, o.seed);
  if (o.emit_path.empty() || o.emit_path == "-") {
    write_vectors(out, vectors);
  } else {
    std::ofstream f(o.emit_path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + o.emit_path + "' for writing");
    write_vectors(f, vectors);
    out << "wrote " << vectors.size() << " vectors to " << o.emit_path << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Authenticated-preamble exhaustion-attack simulator for LoRaWAN Class B devices", "apsim"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Simulate a scenario file and write events.csv, current.csv, report.txt, report.kv");
  run->add_option("scenario", run_opts.scenario, "Scenario file (key = value format)")->required();
  run->add_option("--seed", run_opts.seed, "Override rng_seed");
  run->add_option("--horizon", run_opts.horizon_s, "Override horizon (seconds)")->check(CLI::PositiveNumber);
  run->add_option("--ap", run_opts.ap, "Authenticated preamble on the device")->check(CLI::IsMember({"on", "off"}));
  run->add_option("--attack", run_opts.attack, "Attacker strategy")->check(CLI::IsMember({"flood", "silent", "forgery"}));
  run->add_option("--out", run_opts.out_dir, "Output directory")->capture_default_str();
  run->add_option("--sample-rate-hz", run_opts.sample_rate_hz, "Current sample rate for current.csv")
      ->check(CLI::PositiveNumber);
  run->add_flag("--no-current", run_opts.no_current, "Skip current.csv");

  Table2Options t2_opts;
  auto* table2 = app.add_subcommand("table2", "Battery lifetimes of the four scenarios, closed form and simulated");
  table2->add_option("--sim-horizon", t2_opts.sim_horizon_s, "Simulated seconds per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table2->add_option("--kv", t2_opts.kv_path, "Also write key=value results to this file");

  VectorOptions v_opts;
  auto* vectors = app.add_subcommand("vectors", "Emit or check AP MAC golden vectors");
  auto* emit = vectors->add_option("--emit", v_opts.emit_path, "Write vectors to file ('-' for stdout)");
  auto* check = vectors->add_option("--check", v_opts.check_path, "Verify vectors in file");
  emit->excludes(check);
  vectors->add_option("--count", v_opts.count, "Random vectors to emit")->capture_default_str();
  vectors->add_option("--seed", v_opts.seed, "Seed for random vectors")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*run) return do_run(run_opts, out);
    if (*table2) return do_table2(t2_opts, out);
    if (*vectors) return do_vectors(v_opts, out, err);
  } catch (const ScenarioParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace lora_ap
