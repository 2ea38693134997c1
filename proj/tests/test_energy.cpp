#include <doctest.h>

#include "gen.hpp"
#include "lora_ap/energy.hpp"
#include "lora_ap/errors.hpp"

using namespace lora_ap;
using std::chrono::milliseconds;
using std::chrono::seconds;

namespace {

// mA * s -> Ah
double ah(double ma, double s) { return ma * s / 3600.0 / 1000.0; }

constexpr double kHoursPerYear = 8760.0;

}  // namespace

TEST_CASE("receiving 14 s at 11.5 mA") {
  const EnergyParams p;
  const EnergyLedger l = accrue({}, DeviceMode::receiving, seconds{14}, p);
  CHECK(l.charge_ah(DeviceMode::receiving) == doctest::Approx(4.472e-5).epsilon(1e-3));
  CHECK(l.charge_ah(DeviceMode::receiving) == doctest::Approx(ah(11.5, 14)));
}

TEST_CASE("sleeping one hour draws only the sensor share") {
  const EnergyParams p;
  const EnergyLedger l = accrue({}, DeviceMode::sleeping, kHour, p);
  CHECK(l.radio_ah() == 0.0);
  CHECK(l.sensor_ah() == doctest::Approx(2.2 / kHoursPerYear));
  CHECK(l.horizon() == kHour);
}

TEST_CASE("zero duration leaves the ledger unchanged, negative throws") {
  const EnergyParams p;
  const EnergyLedger base = accrue({}, DeviceMode::listening, seconds{3}, p);
  CHECK(accrue(base, DeviceMode::transmitting, SimTime::zero(), p) == base);
  CHECK_THROWS_AS(accrue(base, DeviceMode::listening, SimTime{-1}, p), EnergyError);
}

TEST_CASE("currents per mode") {
  EnergyParams p;
  p.sleep_current_ma = 0.002;
  CHECK(p.current_ma(DeviceMode::listening) == 11.5);
  CHECK(p.current_ma(DeviceMode::receiving) == 11.5);
  CHECK(p.current_ma(DeviceMode::verifying_ap) == 11.5);
  CHECK(p.current_ma(DeviceMode::transmitting) == 18.0);
  CHECK(p.current_ma(DeviceMode::sleeping) == 0.002);
}

TEST_CASE("ledger conservation and monotonicity under random accrual") {
  gen::Rng rng(1);
  const EnergyParams p;
  EnergyLedger l;
  EnergyLedger prev;
  for (int i = 0; i < 5000; ++i) {
    const auto mode = static_cast<DeviceMode>(rng.range(0, kDeviceModeCount - 1));
    l.accrue(mode, SimTime{rng.range(0, 20'000'000)}, p);
    double sum = 0.0;
    for (std::size_t m = 0; m < kDeviceModeCount; ++m) sum += l.charge_ah(static_cast<DeviceMode>(m));
    REQUIRE(l.total_ah() == sum + l.sensor_ah());
    for (std::size_t m = 0; m < kDeviceModeCount; ++m) {
      REQUIRE(l.charge_ah(static_cast<DeviceMode>(m)) >= prev.charge_ah(static_cast<DeviceMode>(m)));
      REQUIRE(l.charge_ah(static_cast<DeviceMode>(m)) >= 0.0);
    }
    REQUIRE(l.sensor_ah() >= prev.sensor_ah());
    prev = l;
  }
}

TEST_CASE("annualize scales by one year over the horizon") {
  const EnergyParams p;
  EnergyLedger l;
  for (int i = 0; i < 4; ++i) {
    l.accrue(DeviceMode::sleeping, seconds{1}, p);
    l.accrue(DeviceMode::receiving, seconds{14}, p);
  }
  const AnnualDrain a = annualize(l);
  // 14 s receiving per 15 s at 11.5 mA for a year.
  CHECK(a.by(DeviceMode::receiving) == doctest::Approx(11.5e-3 * 14.0 / 15.0 * kHoursPerYear));
  CHECK(a.by(DeviceMode::receiving) == doctest::Approx(94.024).epsilon(0.01));
  CHECK(a.sensor == doctest::Approx(2.2));
  CHECK(a.downlink() == a.by(DeviceMode::receiving));
  CHECK_THROWS_AS(annualize(EnergyLedger{}), EnergyError);
}

TEST_CASE("quiet network listening per year") {
  const EnergyParams p;
  EnergyLedger l;
  l.accrue(DeviceMode::listening, milliseconds{300}, p);
  l.accrue(DeviceMode::sleeping, milliseconds{14700}, p);
  const double dl = annualize(l).downlink();
  CHECK(dl == doctest::Approx(11.5e-3 * 0.3 / 15.0 * kHoursPerYear));
  CHECK(dl == doctest::Approx(1.983).epsilon(0.02));
}

TEST_CASE("attacked AP device per year") {
  const EnergyParams p;
  EnergyLedger l;
  l.accrue(DeviceMode::verifying_ap, milliseconds{25}, p);
  l.accrue(DeviceMode::receiving, SimTime{925696}, p);
  l.accrue(DeviceMode::sleeping, seconds{15} - milliseconds{25} - SimTime{925696}, p);
  const double dl = annualize(l).downlink();
  CHECK(dl >= 6.0);
  CHECK(dl <= 6.4);
}

TEST_CASE("battery lifetime of the table scenarios") {
  const AnnualDrainTable t;
  const auto d = scenario_drains(t);
  CHECK(d.normal_no_ap == doctest::Approx(2.2 + 0.025 + 1.983));
  CHECK(d.attack_no_ap == doctest::Approx(2.2 + 0.025 + 94.024));
  CHECK(d.attack_ap == doctest::Approx(2.2 + 0.025 + 0.17 + 6.354));
  const auto l = lifetimes_from_drains(d, t.battery_capacity_ah);
  CHECK(l.normal_no_ap == doctest::Approx(5.51).epsilon(0.002));
  CHECK(l.normal_ap == doctest::Approx(5.30).epsilon(0.002));
  CHECK(l.attack_no_ap * 12 == doctest::Approx(2.9).epsilon(0.01));
  CHECK(l.attack_ap == doctest::Approx(2.65).epsilon(0.002));
  CHECK_THROWS_AS(battery_lifetime(0.0, 23.2), EnergyError);
  CHECK(battery_lifetime(2.0, 23.2) == doctest::Approx(11.6));
}

TEST_CASE("overhead and mitigation ratios") {
  const AnnualDrainTable t;
  const auto l = lifetimes_from_drains(scenario_drains(t), t.battery_capacity_ah);
  const auto r = overhead_and_mitigation_report(l, t.attack_no_ap_ah, t.attack_with_ap_ah, 14.0, 0.9);
  CHECK(r.ap_overhead < 0.04);
  CHECK(r.ap_overhead == doctest::Approx(0.038).epsilon(0.03));
  CHECK(r.attack_reduction_no_ap == doctest::Approx(0.956).epsilon(0.005));
  CHECK(r.attack_drain_reduction == doctest::Approx(1.0 - 6.354 / 94.024));
  CHECK(r.attack_drain_reduction == doctest::Approx(0.932).epsilon(0.002));
  CHECK(r.awake_time_reduction == doctest::Approx(1.0 - 0.9 / 14.0));
  CHECK(r.attack_reduction_ap == doctest::Approx(1.0 - 2.6517 / 5.5133).epsilon(0.001));
  CHECK(r.lifetime_gain_factor == doctest::Approx(l.attack_ap / l.attack_no_ap));
}

TEST_CASE("scenario ordering holds for random tables") {
  gen::Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    AnnualDrainTable t;
    t.sensor_ah = static_cast<double>(rng.range(0, 5000)) / 1000.0;
    t.uplink_ah = static_cast<double>(rng.range(0, 100)) / 1000.0;
    t.dl_listening_ah = static_cast<double>(rng.range(1, 5000)) / 1000.0;
    t.ap_beacon_ah = static_cast<double>(rng.range(0, 500)) / 1000.0;
    t.attack_with_ap_ah = t.dl_listening_ah + static_cast<double>(rng.range(1, 20000)) / 1000.0;
    t.attack_no_ap_ah = t.attack_with_ap_ah + t.ap_beacon_ah + static_cast<double>(rng.range(1, 200000)) / 1000.0;
    const auto l = lifetimes_from_drains(scenario_drains(t), 23.2);
    REQUIRE(l.attack_ap > l.attack_no_ap);
    REQUIRE(l.normal_no_ap > l.attack_no_ap);
    REQUIRE(l.normal_ap > l.attack_ap);
  }
}

TEST_CASE("scaling currents and sensor drain scales drains and lifetimes") {
  gen::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double c = static_cast<double>(rng.range(1, 1000)) / 100.0;
    EnergyParams p, q;
    q.rx_current_ma *= c;
    q.tx_current_ma *= c;
    q.sleep_current_ma = p.sleep_current_ma = 0.001;
    q.sleep_current_ma *= c;
    q.sensor_drain_ah_per_year *= c;
    EnergyLedger lp, lq;
    for (int k = 0; k < 20; ++k) {
      const auto mode = static_cast<DeviceMode>(rng.range(0, kDeviceModeCount - 1));
      const SimTime d{rng.range(1, 30'000'000)};
      lp.accrue(mode, d, p);
      lq.accrue(mode, d, q);
    }
    const double dp = annualize(lp).total(), dq = annualize(lq).total();
    REQUIRE(dq == doctest::Approx(c * dp).epsilon(1e-9));
    REQUIRE(battery_lifetime(dq, 23.2) == doctest::Approx(battery_lifetime(dp, 23.2) / c).epsilon(1e-9));
  }
}

TEST_CASE("energy parameter validation") {
  EnergyParams p;
  CHECK_NOTHROW(p.validate());
  p.battery_capacity_ah = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.rx_current_ma = -1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
