#include "lora_ap/energy.hpp"

#include "lora_ap/errors.hpp"

namespace lora_ap {

namespace {
constexpr double kMicrosecondsPerHour = 3.6e9;
}

std::string_view to_string(DeviceMode mode) {
  switch (mode) {
    case DeviceMode::sleeping:
      return "sleeping";
    case DeviceMode::listening:
      return "listening";
    case DeviceMode::receiving:
      return "receiving";
    case DeviceMode::verifying_ap:
      return "verifying_ap";
    case DeviceMode::transmitting:
      return "transmitting";
  }
  return "unknown";
}

void EnergyParams::validate() const {
  if (!(battery_capacity_ah > 0)) throw ConfigError("battery_capacity must be > 0");
  if (sensor_drain_ah_per_year < 0 || rx_current_ma < 0 || tx_current_ma < 0 || sleep_current_ma < 0)
    throw ConfigError("energy parameters must be >= 0");
}

double EnergyParams::current_ma(DeviceMode mode) const {
  switch (mode) {
    case DeviceMode::sleeping:
      return sleep_current_ma;
    case DeviceMode::listening:
    case DeviceMode::receiving:
    case DeviceMode::verifying_ap:
      return rx_current_ma;
    case DeviceMode::transmitting:
      return tx_current_ma;
  }
  return 0.0;
}

double EnergyLedger::radio_ah() const {
  double sum = 0.0;
  for (double v : by_mode_) sum += v;
  return sum;
}

double EnergyLedger::total_ah() const { return radio_ah() + sensor_ah_; }

void EnergyLedger::accrue(DeviceMode mode, SimTime duration, const EnergyParams& params) {
  if (duration < SimTime::zero()) throw EnergyError("negative duration " + format_seconds(duration) + " s");
  if (duration == SimTime::zero()) return;
  const double hours = static_cast<double>(duration.count()) / kMicrosecondsPerHour;
  by_mode_[static_cast<std::size_t>(mode)] += params.current_ma(mode) * hours / 1000.0;
  sensor_ah_ += params.sensor_drain_ah_per_year * static_cast<double>(duration.count()) /
                static_cast<double>(kYear.count());
  horizon_ += duration;
}

EnergyLedger accrue(EnergyLedger ledger, DeviceMode mode, SimTime duration, const EnergyParams& params) {
  ledger.accrue(mode, duration, params);
  return ledger;
}

double AnnualDrain::radio() const {
  double sum = 0.0;
  for (double v : by_mode) sum += v;
  return sum;
}

double AnnualDrain::total() const { return radio() + sensor; }

double AnnualDrain::downlink() const {
  return by(DeviceMode::listening) + by(DeviceMode::receiving) + by(DeviceMode::verifying_ap);
}

AnnualDrain annualize(const EnergyLedger& ledger) {
  if (ledger.horizon() <= SimTime::zero()) throw EnergyError("cannot annualize a ledger with zero horizon");
  const double scale = static_cast<double>(kYear.count()) / static_cast<double>(ledger.horizon().count());
  AnnualDrain out;
  for (std::size_t i = 0; i < kDeviceModeCount; ++i) out.by_mode[i] = ledger.charge_ah(static_cast<DeviceMode>(i)) * scale;
  out.sensor = ledger.sensor_ah() * scale;
  return out;
}

double battery_lifetime(double annual_drain_ah, double capacity_ah) {
  if (!(annual_drain_ah > 0)) throw EnergyError("annual drain must be > 0");
  return capacity_ah / annual_drain_ah;
}

ScenarioDrains scenario_drains(const AnnualDrainTable& t) {
  const double base = t.sensor_ah + t.uplink_ah;
  return {
      .normal_no_ap = base + t.dl_listening_ah,
      .normal_ap = base + t.dl_listening_ah + t.ap_beacon_ah,
      .attack_no_ap = base + t.attack_no_ap_ah,
      .attack_ap = base + t.ap_beacon_ah + t.attack_with_ap_ah,
  };
}

ScenarioLifetimes lifetimes_from_drains(const ScenarioDrains& d, double capacity_ah) {
  return {
      .normal_no_ap = battery_lifetime(d.normal_no_ap, capacity_ah),
      .normal_ap = battery_lifetime(d.normal_ap, capacity_ah),
      .attack_no_ap = battery_lifetime(d.attack_no_ap, capacity_ah),
      .attack_ap = battery_lifetime(d.attack_ap, capacity_ah),
  };
}

MitigationReport overhead_and_mitigation_report(const ScenarioLifetimes& l, double attack_drain_no_ap,
                                                double attack_drain_ap, double awake_no_ap_s, double awake_ap_s) {
  MitigationReport r;
  r.ap_overhead = 1.0 - l.normal_ap / l.normal_no_ap;
  r.attack_reduction_no_ap = 1.0 - l.attack_no_ap / l.normal_no_ap;
  r.attack_reduction_ap = 1.0 - l.attack_ap / l.normal_no_ap;
  r.attack_reduction_ap_vs_ap = 1.0 - l.attack_ap / l.normal_ap;
  r.attack_drain_reduction = attack_drain_no_ap > 0 ? 1.0 - attack_drain_ap / attack_drain_no_ap : 0.0;
  r.awake_time_reduction = awake_no_ap_s > 0 ? 1.0 - awake_ap_s / awake_no_ap_s : 0.0;
  r.lifetime_gain_factor = l.attack_ap / l.attack_no_ap;
  return r;
}

}  // namespace lora_ap
