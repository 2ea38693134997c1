#include "lora_ap/report.hpp"

#include <cstdio>
#include <sstream>

namespace lora_ap {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void kv(std::ostringstream& out, const std::string& key, double v) { out << key << '=' << fmt("%.6f", v) << '\n'; }
void kv(std::ostringstream& out, const std::string& key, std::uint64_t v) { out << key << '=' << v << '\n'; }

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

double downlink_of(const RunSummary& s) { return s.annual.downlink(); }

}  // namespace

RunSummary summarize(const SimulationResult& result, const EnergyParams& energy) {
  RunSummary s;
  s.annual = annualize(result.ledger);
  s.lifetime_years = battery_lifetime(s.annual.total(), energy.battery_capacity_ah);
  double sum = 0.0;
  for (const auto& iv : result.trace.awake_intervals()) {
    if (!iv.received || iv.transmitted) continue;
    sum += to_seconds(iv.duration());
    ++s.rx_cycles;
  }
  if (s.rx_cycles) s.mean_rx_awake_s = sum / static_cast<double>(s.rx_cycles);
  return s;
}

std::string render_report_text(const ScenarioConfig& cfg, const SimulationResult& result) {
  const RunSummary s = summarize(result, cfg.energy);
  const auto& st = result.stats;
  std::ostringstream out;
  out << "scenario: horizon " << format_seconds(cfg.horizon) << " s, AP " << (cfg.device.ap_enabled ? "on" : "off")
      << ", attacker " << to_string(cfg.attacker.strategy) << ", seed " << cfg.rng_seed << "\n\n";
  out << "activity\n"
      << "  wakes                 " << st.wakes << "\n"
      << "  slots missed          " << st.slots_missed << "\n"
      << "  frames received       " << st.frames_received << "\n"
      << "  discarded early (AP)  " << st.discarded_early << "\n"
      << "  discarded after rx    " << st.discarded_after_full_rx << "\n"
      << "  attack frames sent    " << st.attack_frames_sent << "\n"
      << "  forgeries accepted    " << st.forgeries_accepted << "\n"
      << "  downlinks sent        " << st.downlinks_sent << " (accepted " << st.downlinks_accepted << ", rejected "
      << st.downlinks_rejected << ", missed " << st.downlinks_missed << ", deferred " << st.downlinks_deferred << ")\n"
      << "  token announcements   " << st.announcements_sent << "\n"
      << "  data uplinks          " << st.data_uplinks_sent << "\n";
  if (s.rx_cycles) out << "  mean awake per rx     " << fmt("%.6f", s.mean_rx_awake_s) << " s\n";
  out << "\nannualized drain (Ah/year)\n";
  for (std::size_t i = 0; i < kDeviceModeCount; ++i) {
    const auto mode = static_cast<DeviceMode>(i);
    out << "  " << pad(to_string(mode), 14) << fmt("%10.4f", s.annual.by(mode)) << "\n";
  }
  out << "  sensor        " << fmt("%10.4f", s.annual.sensor) << "\n"
      << "  total         " << fmt("%10.4f", s.annual.total()) << "\n\n"
      << "battery lifetime: " << fmt("%.3f", s.lifetime_years) << " years (" << fmt("%.1f", s.lifetime_years * 12.0)
      << " months) on " << fmt("%.1f", cfg.energy.battery_capacity_ah) << " Ah\n";
  return out.str();
}

std::string render_report_kv(const ScenarioConfig& cfg, const SimulationResult& result) {
  const RunSummary s = summarize(result, cfg.energy);
  const auto& st = result.stats;
  std::ostringstream out;
  out << "horizon_s=" << format_seconds(cfg.horizon) << '\n'
      << "ap_enabled=" << (cfg.device.ap_enabled ? 1 : 0) << '\n'
      << "attacker=" << to_string(cfg.attacker.strategy) << '\n';
  kv(out, "rng_seed", cfg.rng_seed);
  kv(out, "boot_token", st.boot_token);
  kv(out, "wakes", st.wakes);
  kv(out, "slots_missed", st.slots_missed);
  kv(out, "frames_received", st.frames_received);
  kv(out, "discarded_early", st.discarded_early);
  kv(out, "discarded_after_full_rx", st.discarded_after_full_rx);
  kv(out, "attack_frames_sent", st.attack_frames_sent);
  kv(out, "forgeries_accepted", st.forgeries_accepted);
  kv(out, "downlinks_sent", st.downlinks_sent);
  kv(out, "downlinks_accepted", st.downlinks_accepted);
  kv(out, "downlinks_rejected", st.downlinks_rejected);
  kv(out, "downlinks_missed", st.downlinks_missed);
  kv(out, "downlinks_deferred", st.downlinks_deferred);
  kv(out, "announcements_sent", st.announcements_sent);
  kv(out, "data_uplinks_sent", st.data_uplinks_sent);
  kv(out, "mean_rx_awake_s", s.mean_rx_awake_s);
  for (std::size_t i = 0; i < kDeviceModeCount; ++i) {
    const auto mode = static_cast<DeviceMode>(i);
    kv(out, "charge_ah." + std::string(to_string(mode)), result.ledger.charge_ah(mode));
    kv(out, "annual_ah." + std::string(to_string(mode)), s.annual.by(mode));
  }
  kv(out, "charge_ah.sensor", result.ledger.sensor_ah());
  kv(out, "charge_ah.total", result.ledger.total_ah());
  kv(out, "annual_ah.sensor", s.annual.sensor);
  kv(out, "annual_ah.downlink", s.annual.downlink());
  kv(out, "annual_ah.uplink", s.annual.by(DeviceMode::transmitting));
  kv(out, "annual_ah.total", s.annual.total());
  kv(out, "battery_capacity_ah", cfg.energy.battery_capacity_ah);
  kv(out, "lifetime_years", s.lifetime_years);
  return out.str();
}

ScenarioConfig table_scenario(bool attack, bool ap, SimTime horizon, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.horizon = horizon;
  cfg.rng_seed = seed;
  cfg.attacker.strategy = attack ? AttackStrategy::max_payload_flood : AttackStrategy::silent;
  set_ap_enabled(cfg, ap);
  return cfg;
}

ScenarioConfig capture_scenario(bool attack, bool ap, std::uint64_t seed) {
  ScenarioConfig cfg = table_scenario(attack, ap, std::chrono::seconds{60}, seed);
  cfg.device.announce_at_boot = false;
  cfg.device.beacon_phase = std::chrono::milliseconds{500};
  return cfg;
}

Table2Result compute_table2(const AnnualDrainTable& table, SimTime sim_horizon) {
  Table2Result r;
  r.table = table;
  r.analytic_drains = scenario_drains(table);
  r.analytic = lifetimes_from_drains(r.analytic_drains, table.battery_capacity_ah);
  // 14 s vs 0.9 s awake per window
  r.analytic_mitigation =
      overhead_and_mitigation_report(r.analytic, table.attack_no_ap_ah, table.attack_with_ap_ah, 14.0, 0.9);

  r.sim_horizon = sim_horizon;
  auto sim = [&](bool attack, bool ap) {
    const ScenarioConfig cfg = table_scenario(attack, ap, sim_horizon);
    return summarize(run_scenario(cfg), cfg.energy);
  };
  r.run_normal_no_ap = sim(false, false);
  r.run_normal_ap = sim(false, true);
  r.run_attack_no_ap = sim(true, false);
  r.run_attack_ap = sim(true, true);
  r.simulated = {r.run_normal_no_ap.lifetime_years, r.run_normal_ap.lifetime_years,
                 r.run_attack_no_ap.lifetime_years, r.run_attack_ap.lifetime_years};

  r.sim_dl_listening = downlink_of(r.run_normal_no_ap);
  r.sim_ap_beacon = r.run_normal_ap.annual.total() - r.run_normal_no_ap.annual.total();
  r.sim_attack_no_ap = downlink_of(r.run_attack_no_ap);
  r.sim_attack_ap = downlink_of(r.run_attack_ap);
  r.sim_uplink = r.run_normal_no_ap.annual.by(DeviceMode::transmitting);
  r.simulated_mitigation =
      overhead_and_mitigation_report(r.simulated, r.sim_attack_no_ap, r.sim_attack_ap,
                                     r.run_attack_no_ap.mean_rx_awake_s, r.run_attack_ap.mean_rx_awake_s);
  return r;
}

std::string render_table2(const Table2Result& r) {
  const ReferenceLifetimes ref;
  std::ostringstream out;
  auto row = [&](const char* mode, const char* ap, double reference, double analytic, double simulated) {
    out << pad(mode, 18) << pad(ap, 4)
        << fmt("%10.3f", reference) << fmt("%10.3f", analytic) << fmt("%10.3f", simulated)
        << fmt("%+9.2f%%", 100.0 * (analytic / reference - 1.0)) << fmt("%+9.2f%%", 100.0 * (simulated / reference - 1.0))
        << fmt("%9.1f mo", analytic * 12.0) << '\n';
  };
  out << "Expected battery lifetime (years)\n"
      << "mode              AP   reference  analytic simulated  analytic  simulated\n";
  row("normal operation", "no", ref.normal_no_ap, r.analytic.normal_no_ap, r.simulated.normal_no_ap);
  row("normal operation", "yes", ref.normal_ap, r.analytic.normal_ap, r.simulated.normal_ap);
  row("exhaustion attack", "no", ref.attack_no_ap, r.analytic.attack_no_ap, r.simulated.attack_no_ap);
  row("exhaustion attack", "yes", ref.attack_ap, r.analytic.attack_ap, r.simulated.attack_ap);

  out << "\nAnnual drain rows (Ah/year)        table  simulated\n"
      << "  sensors UL data              " << fmt("%9.3f", r.table.uplink_ah) << fmt("%11.3f", r.sim_uplink) << '\n'
      << "  DL listening                 " << fmt("%9.3f", r.table.dl_listening_ah) << fmt("%11.3f", r.sim_dl_listening) << '\n'
      << "  AP beacon                    " << fmt("%9.3f", r.table.ap_beacon_ah) << fmt("%11.3f", r.sim_ap_beacon) << '\n'
      << "  attack drain (no AP)         " << fmt("%9.3f", r.table.attack_no_ap_ah) << fmt("%11.3f", r.sim_attack_no_ap) << '\n'
      << "  attack drain (with AP)       " << fmt("%9.3f", r.table.attack_with_ap_ah) << fmt("%11.3f", r.sim_attack_ap) << '\n';

  auto pct = [](double v) { return fmt("%6.2f%%", 100.0 * v); };
  const auto& a = r.analytic_mitigation;
  const auto& s = r.simulated_mitigation;
  out << "\nRatios                                          analytic  simulated\n"
      << "  AP overhead, normal operation                 " << pct(a.ap_overhead) << "   " << pct(s.ap_overhead) << '\n'
      << "  lifetime reduction under attack, no AP        " << pct(a.attack_reduction_no_ap) << "   " << pct(s.attack_reduction_no_ap) << '\n'
      << "  lifetime reduction under attack, AP (vs noAP) " << pct(a.attack_reduction_ap) << "   " << pct(s.attack_reduction_ap) << '\n'
      << "  lifetime reduction under attack, AP (vs AP)   " << pct(a.attack_reduction_ap_vs_ap) << "   " << pct(s.attack_reduction_ap_vs_ap) << '\n'
      << "  attack drain reduction                        " << pct(a.attack_drain_reduction) << "   " << pct(s.attack_drain_reduction) << '\n'
      << "  awake time reduction per window               " << pct(a.awake_time_reduction) << "   " << pct(s.awake_time_reduction) << '\n'
      << "  lifetime gain under attack                    " << fmt("%6.2fx", a.lifetime_gain_factor) << "   "
      << fmt("%6.2fx", s.lifetime_gain_factor) << '\n';
  out << "\nsimulated horizon " << format_seconds(r.sim_horizon) << " s per scenario; mean awake per attacked window "
      << fmt("%.3f", r.run_attack_no_ap.mean_rx_awake_s) << " s (no AP), " << fmt("%.3f", r.run_attack_ap.mean_rx_awake_s)
      << " s (AP)\n";
  return out.str();
}

std::string render_table2_kv(const Table2Result& r) {
  std::ostringstream out;
  kv(out, "table.battery_capacity_ah", r.table.battery_capacity_ah);
  kv(out, "table.sensor_ah_per_year", r.table.sensor_ah);
  kv(out, "table.uplink_ah_per_year", r.table.uplink_ah);
  kv(out, "table.dl_listening_ah_per_year", r.table.dl_listening_ah);
  kv(out, "table.ap_beacon_ah_per_year", r.table.ap_beacon_ah);
  kv(out, "table.attack_no_ap_ah_per_year", r.table.attack_no_ap_ah);
  kv(out, "table.attack_with_ap_ah_per_year", r.table.attack_with_ap_ah);
  kv(out, "analytic.lifetime.normal_no_ap", r.analytic.normal_no_ap);
  kv(out, "analytic.lifetime.normal_ap", r.analytic.normal_ap);
  kv(out, "analytic.lifetime.attack_no_ap", r.analytic.attack_no_ap);
  kv(out, "analytic.lifetime.attack_ap", r.analytic.attack_ap);
  kv(out, "analytic.ap_overhead", r.analytic_mitigation.ap_overhead);
  kv(out, "analytic.attack_reduction_no_ap", r.analytic_mitigation.attack_reduction_no_ap);
  kv(out, "analytic.attack_reduction_ap", r.analytic_mitigation.attack_reduction_ap);
  kv(out, "analytic.attack_drain_reduction", r.analytic_mitigation.attack_drain_reduction);
  kv(out, "analytic.awake_time_reduction", r.analytic_mitigation.awake_time_reduction);
  kv(out, "simulated.lifetime.normal_no_ap", r.simulated.normal_no_ap);
  kv(out, "simulated.lifetime.normal_ap", r.simulated.normal_ap);
  kv(out, "simulated.lifetime.attack_no_ap", r.simulated.attack_no_ap);
  kv(out, "simulated.lifetime.attack_ap", r.simulated.attack_ap);
  kv(out, "simulated.dl_listening_ah_per_year", r.sim_dl_listening);
  kv(out, "simulated.ap_beacon_ah_per_year", r.sim_ap_beacon);
  kv(out, "simulated.attack_no_ap_ah_per_year", r.sim_attack_no_ap);
  kv(out, "simulated.attack_with_ap_ah_per_year", r.sim_attack_ap);
  kv(out, "simulated.uplink_ah_per_year", r.sim_uplink);
  kv(out, "simulated.ap_overhead", r.simulated_mitigation.ap_overhead);
  kv(out, "simulated.attack_drain_reduction", r.simulated_mitigation.attack_drain_reduction);
  return out.str();
}

}  // namespace lora_ap
