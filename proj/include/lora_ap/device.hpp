#pragma once

#include <cstdint>
#include <optional>

#include "lora_ap/ap_auth.hpp"
#include "lora_ap/energy.hpp"
#include "lora_ap/frame.hpp"
#include "lora_ap/radio.hpp"
#include "lora_ap/sim_time.hpp"

namespace lora_ap {

class EventTrace;

// LoRaWAN framing around application data: MHDR(1) + FHDR(7) + FPort(1)
// ahead of the payload and a 4-byte MIC after it.
inline constexpr std::size_t kLorawanHeaderSize = 9;
inline constexpr std::size_t kLorawanMicSize = 4;
inline constexpr std::size_t kLorawanOverhead = kLorawanHeaderSize + kLorawanMicSize;
inline constexpr std::size_t kMaxAppPayload = kMaxPhyPayload - kLorawanOverhead;  // 242

enum class Sender : std::uint8_t { gateway, attacker };

// A frame on the channel. `start` is when its preamble begins.
struct IncomingFrame {
  Frame frame;
  Sender sender = Sender::gateway;
  SimTime start{0};
};

// Class B schedule: reception frame k spans [k*P, (k+1)*P). The device wakes
// at k*P + beacon_phase; with AP enabled it first spends ap_verify_time
// preparing the expected MAC, then listens for listen_window.
struct DeviceConfig {
  SimTime beacon_period = std::chrono::seconds{15};
  SimTime beacon_phase = std::chrono::milliseconds{7500};
  SimTime listen_window = std::chrono::milliseconds{300};
  bool ap_enabled = false;
  SimTime ap_verify_time = std::chrono::milliseconds{25};
  // Accept MACs for counters within +-tolerance frames of the device's own.
  std::uint32_t mac_tolerance_frames = 0;
  RadioParams radio;
  // Off: the gateway already holds the boot token, as for a capture taken
  // from a device that synchronized before the trace started.
  bool announce_at_boot = true;
  SimTime token_retransmit_interval = std::chrono::hours{24};
  SimTime uplink_period = std::chrono::hours{24};
  SimTime uplink_offset = std::chrono::hours{1};
  std::size_t uplink_payload = 20;
  std::optional<SimTime> uplink_airtime_override = std::chrono::seconds{5};
  ApKey ap_key{};
  BootTokenSeed boot_seed = BootTokenSeed::random(0);

  // Throws ConfigError.
  void validate() const;

  SimTime frame_start(std::uint64_t frame) const { return beacon_period * static_cast<std::int64_t>(frame); }
  SimTime wake_time(std::uint64_t frame) const { return frame_start(frame) + beacon_phase; }
  SimTime listen_offset() const { return ap_enabled ? ap_verify_time : SimTime::zero(); }
  SimTime listen_start(std::uint64_t frame) const { return wake_time(frame) + listen_offset(); }
  SimTime listen_end(std::uint64_t frame) const { return listen_start(frame) + listen_window; }
};

struct DeviceState {
  DeviceMode mode = DeviceMode::sleeping;
  // Counter of the current reception frame; origin_time is that frame's start.
  TokenState token_state;
  std::uint64_t frame_index = 0;
  SimTime next_wake{0};
  SimTime mode_since{0};
  EnergyLedger ledger;

  friend bool operator==(const DeviceState&, const DeviceState&) = default;
};

enum class UplinkKind : std::uint8_t { token_announcement, data };

struct Uplink {
  UplinkKind kind = UplinkKind::data;
  LegacyFrame frame;
  SimTime airtime{0};
};

struct BootResult {
  DeviceState state;
  Uplink announcement;
};

// Initializes the token and schedules the first wake in frame 0 (boot happens
// at the start of frame 0). The announcement carries the boot token.
BootResult boot(const DeviceConfig& config, SimTime now = SimTime::zero());

struct WakeResult {
  DeviceState state;
  // Silence: whole wake (verify + listen window). Frame detected: time from
  // wake until the frame's preamble, after which the receive path applies.
  SimTime awake{0};
  bool frame_detected = false;
};

// The preamble of `frame` can be caught by a receiver that starts listening
// at `listen_from` and stops at `listen_to`.
bool frame_detectable(const IncomingFrame& frame, SimTime listen_from, SimTime listen_to, const RadioParams& radio);

WakeResult on_wake(const DeviceState& state, const DeviceConfig& config, SimTime now,
                   const std::optional<IncomingFrame>& channel);

enum class ReceiveVerdict : std::uint8_t { accepted, discarded_early, discarded_after_full_rx };

std::string_view to_string(ReceiveVerdict verdict);

struct ReceiveResult {
  ReceiveVerdict verdict = ReceiveVerdict::accepted;
  // Receiver-on time from the frame's preamble start to the return to sleep.
  SimTime duration{0};
  // Time from preamble start to the AP verdict (AP enabled only).
  std::optional<SimTime> ap_decision;
};

// AP enabled: wrong or missing MAC ends reception after the MAC bytes; a good
// MAC continues to a full reception. AP disabled: always a full reception,
// then the network-level MIC accepts gateway frames and rejects the rest.
ReceiveResult receive_path(const DeviceState& state, const DeviceConfig& config, const IncomingFrame& frame);

Uplink scheduled_uplink(const DeviceState& state, const DeviceConfig& config, SimTime now);
Uplink token_announcement(const DeviceState& state, const DeviceConfig& config);

// Builds a LoRaWAN-shaped frame: 9 header bytes, app payload, 4-byte MIC.
Bytes lorawan_header(std::uint32_t dev_addr, std::uint16_t fcnt, std::uint8_t fport);

// Mode bookkeeping for the simulator: enforces the FSM graph, accrues energy
// for the mode being left and mirrors every change into the trace.
class EndDevice {
 public:
  EndDevice(DeviceConfig config, EnergyParams energy, DeviceState state, EventTrace* trace);

  const DeviceConfig& config() const { return config_; }
  const EnergyParams& energy() const { return energy_; }
  const DeviceState& state() const { return state_; }
  DeviceMode mode() const { return state_.mode; }

  // Throws std::logic_error for transitions outside the FSM graph.
  void set_mode(DeviceMode next, SimTime now);

  // Frame boundary: counter and origin advance by one frame.
  void advance_frame(SimTime frame_start);
  void set_next_wake(SimTime t) { state_.next_wake = t; }

  // Marks that the AP MAC of the frame under reception has been accepted.
  void mark_ap_verified() { ap_verified_ = true; }

  // Closes the ledger at `end` without changing mode.
  void finish(SimTime end);

 private:
  DeviceConfig config_;
  EnergyParams energy_;
  DeviceState state_;
  EventTrace* trace_;
  bool ap_verified_ = false;
};

bool transition_allowed(DeviceMode from, DeviceMode to, bool ap_enabled, bool ap_verified);

}  // namespace lora_ap
