#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lora_ap/energy.hpp"
#include "lora_ap/scenario.hpp"
#include "lora_ap/trace.hpp"

namespace lora_ap {

struct SimStats {
  std::uint64_t wakes = 0;
  std::uint64_t slots_missed = 0;  // wake fell while busy
  std::uint64_t frames_received = 0;
  std::uint64_t discarded_early = 0;
  std::uint64_t discarded_after_full_rx = 0;
  std::uint64_t attack_frames_sent = 0;
  std::uint64_t forgeries_accepted = 0;  // attacker frame passed AP verification
  std::uint64_t downlinks_sent = 0;
  std::uint64_t downlinks_deferred = 0;  // gateway had no token yet
  std::uint64_t downlinks_accepted = 0;
  std::uint64_t downlinks_rejected = 0;
  std::uint64_t downlinks_missed = 0;  // device not listening when it arrived
  std::uint64_t announcements_sent = 0;
  std::uint64_t data_uplinks_sent = 0;
  std::uint64_t boot_token = 0;

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

// Attacker-frame reception that passed AP verification, with what is needed
// to reproduce it.
struct ForgeryRecord {
  SimTime time;
  std::uint64_t rng_seed;
  std::uint64_t window;
  std::uint64_t device_token;
  std::string mac_hex;
};

struct SimulationResult {
  EventTrace trace;
  EnergyLedger ledger;
  SimStats stats;
  std::vector<ForgeryRecord> forgeries;
};

// Deterministic discrete-event run. Events are processed by (time, actor
// priority gateway < attacker < device, insertion order). Identical configs
// give bit-identical results. Throws ConfigError on invalid configuration.
SimulationResult run_scenario(const ScenarioConfig& cfg);

// Seed for an independent random stream derived from the scenario seed.
std::uint64_t derive_seed(std::uint64_t scenario_seed, std::uint64_t stream);

}  // namespace lora_ap
