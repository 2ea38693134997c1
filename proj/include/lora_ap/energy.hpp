#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "lora_ap/sim_time.hpp"

namespace lora_ap {

enum class DeviceMode : std::uint8_t { sleeping, listening, receiving, verifying_ap, transmitting };

inline constexpr std::size_t kDeviceModeCount = 5;

std::string_view to_string(DeviceMode mode);

struct EnergyParams {
  double battery_capacity_ah = 23.2;  // 4x Li-SOCl2, 5.8 Ah each
  double sensor_drain_ah_per_year = 2.2;
  double rx_current_ma = 11.5;
  double tx_current_ma = 18.0;  // at 7 dBm
  double sleep_current_ma = 0.0;

  void validate() const;

  // Radio current drawn in `mode`. Listening, receiving and verifying all
  // keep the receiver on.
  double current_ma(DeviceMode mode) const;
};

// Charge drawn per device mode plus the sensor's wall-clock drain.
class EnergyLedger {
 public:
  double charge_ah(DeviceMode mode) const { return by_mode_[static_cast<std::size_t>(mode)]; }
  double sensor_ah() const { return sensor_ah_; }
  double radio_ah() const;
  // Sum of all buckets in fixed order: sleeping..transmitting, then sensor.
  double total_ah() const;
  SimTime horizon() const { return horizon_; }

  // Adds current(mode) * duration to the mode bucket and the sensor drain for
  // the same wall time. Throws EnergyError on negative duration.
  void accrue(DeviceMode mode, SimTime duration, const EnergyParams& params);

  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;

 private:
  std::array<double, kDeviceModeCount> by_mode_{};
  double sensor_ah_ = 0.0;
  SimTime horizon_{0};
};

// Value-returning form of EnergyLedger::accrue.
EnergyLedger accrue(EnergyLedger ledger, DeviceMode mode, SimTime duration, const EnergyParams& params);

struct AnnualDrain {
  std::array<double, kDeviceModeCount> by_mode{};
  double sensor = 0.0;

  double by(DeviceMode mode) const { return by_mode[static_cast<std::size_t>(mode)]; }
  double radio() const;
  double total() const;
  // Charge drawn with the receiver on (listening, receiving, verifying).
  double downlink() const;
};

// Scales each bucket to one 365-day year. Throws EnergyError on zero horizon.
AnnualDrain annualize(const EnergyLedger& ledger);

// capacity / annual_drain. Throws EnergyError when annual_drain <= 0.
double battery_lifetime(double annual_drain_ah, double capacity_ah);

// Annual drains itemized the way the reference deployment reports them.
struct AnnualDrainTable {
  double battery_capacity_ah = 23.2;
  double sensor_ah = 2.2;
  double uplink_ah = 0.025;
  double dl_listening_ah = 1.983;
  double ap_beacon_ah = 0.17;
  double attack_no_ap_ah = 94.024;
  double attack_with_ap_ah = 6.354;
};

struct ScenarioLifetimes {
  double normal_no_ap = 0.0;
  double normal_ap = 0.0;
  double attack_no_ap = 0.0;
  double attack_ap = 0.0;
};

struct ScenarioDrains {
  double normal_no_ap = 0.0;
  double normal_ap = 0.0;
  double attack_no_ap = 0.0;
  double attack_ap = 0.0;
};

// Annual drain of each scenario. Under attack the attack drain replaces the
// idle downlink listening cost.
ScenarioDrains scenario_drains(const AnnualDrainTable& table);
ScenarioLifetimes lifetimes_from_drains(const ScenarioDrains& drains, double capacity_ah);

struct MitigationReport {
  double ap_overhead = 0.0;                   // 1 - L(normal,AP)/L(normal,noAP)
  double attack_reduction_no_ap = 0.0;        // 1 - L(attack,noAP)/L(normal,noAP)
  double attack_reduction_ap = 0.0;           // 1 - L(attack,AP)/L(normal,noAP)
  double attack_reduction_ap_vs_ap = 0.0;     // 1 - L(attack,AP)/L(normal,AP)
  double attack_drain_reduction = 0.0;        // 1 - drain(attack,AP)/drain(attack,noAP)
  double awake_time_reduction = 0.0;          // 1 - awake(AP)/awake(noAP) per window
  double lifetime_gain_factor = 0.0;          // L(attack,AP)/L(attack,noAP)
};

// `attack_drain_*` are the attack rows alone (not the scenario totals);
// `awake_*` the per-window awake times under attack.
MitigationReport overhead_and_mitigation_report(const ScenarioLifetimes& lifetimes, double attack_drain_no_ap,
                                                double attack_drain_ap, double awake_no_ap_s, double awake_ap_s);

}  // namespace lora_ap
