#include "lora_ap/device.hpp"

#include <stdexcept>
#include <string>

#include "lora_ap/errors.hpp"
#include "lora_ap/trace.hpp"

namespace lora_ap {

void DeviceConfig::validate() const {
  radio.validate();
  if (beacon_period <= SimTime::zero()) throw ConfigError("beacon_period must be > 0");
  if (listen_window <= SimTime::zero()) throw ConfigError("listen_window must be > 0");
  if (listen_window >= beacon_period) throw ConfigError("listen_window must be shorter than beacon_period");
  if (beacon_phase < SimTime::zero() || beacon_phase >= beacon_period)
    throw ConfigError("beacon_phase must lie in [0, beacon_period)");
  if (ap_verify_time < SimTime::zero()) throw ConfigError("ap_verify_time must be >= 0");
  if (beacon_phase + listen_offset() + listen_window > beacon_period)
    throw ConfigError("wake phase + verify time + listen window must fit inside one beacon period");
  if (token_retransmit_interval <= SimTime::zero()) throw ConfigError("token_retransmit_interval must be > 0");
  if (uplink_period < beacon_period) throw ConfigError("uplink_period must be >= beacon_period");
  if (uplink_offset < SimTime::zero()) throw ConfigError("uplink_offset must be >= 0");
  if (uplink_payload > kMaxAppPayload)
    throw ConfigError("uplink_payload must be <= " + std::to_string(kMaxAppPayload) + " bytes");
  if (uplink_airtime_override && *uplink_airtime_override <= SimTime::zero())
    throw ConfigError("uplink airtime override must be > 0");
}

Bytes lorawan_header(std::uint32_t dev_addr, std::uint16_t fcnt, std::uint8_t fport) {
  Bytes h;
  h.reserve(kLorawanHeaderSize);
  h.push_back(0x60);  // MHDR: unconfirmed data down
  for (int i = 0; i < 4; ++i) h.push_back(static_cast<std::uint8_t>(dev_addr >> (8 * i)));
  h.push_back(0x00);  // FCtrl
  h.push_back(static_cast<std::uint8_t>(fcnt & 0xff));
  h.push_back(static_cast<std::uint8_t>(fcnt >> 8));
  h.push_back(fport);
  return h;
}

namespace {

constexpr std::uint32_t kDevAddr = 0x26011f2a;

LegacyFrame make_uplink_frame(const DeviceConfig& config, Bytes app_payload, std::uint8_t fport) {
  LegacyFrame f;
  f.preamble_symbols = static_cast<std::uint16_t>(config.radio.preamble_symbols);
  f.header = lorawan_header(kDevAddr, 0, fport);
  f.header[0] = 0x40;  // MHDR: unconfirmed data up
  f.payload = std::move(app_payload);
  f.payload.insert(f.payload.end(), kLorawanMicSize, 0x00);
  return f;
}

}  // namespace

BootResult boot(const DeviceConfig& config, SimTime now) {
  config.validate();
  DeviceState s;
  s.token_state.token = generate_boot_token(config.boot_seed);
  s.token_state.shared_key = config.ap_key;
  s.token_state.frame_duration = config.beacon_period;
  s.frame_index = static_cast<std::uint64_t>(now / config.beacon_period);
  s.token_state.origin_time = config.frame_start(s.frame_index);
  s.next_wake = config.wake_time(s.frame_index);
  if (s.next_wake < now) {
    ++s.frame_index;
    ++s.token_state.token;
    s.token_state.origin_time = config.frame_start(s.frame_index);
    s.next_wake = config.wake_time(s.frame_index);
  }
  s.mode_since = now;
  return {s, token_announcement(s, config)};
}

bool frame_detectable(const IncomingFrame& frame, SimTime listen_from, SimTime listen_to, const RadioParams& radio) {
  if (frame.start >= listen_from) return frame.start < listen_to;
  // Started earlier: still catchable while its preamble is on air.
  const auto preamble_len = symbol_time(radio) * (radio.preamble_symbols + 4) + symbol_time(radio) / 4;
  return listen_from < frame.start + preamble_len;
}

WakeResult on_wake(const DeviceState& state, const DeviceConfig& config, SimTime now,
                   const std::optional<IncomingFrame>& channel) {
  if (now != state.next_wake) throw std::logic_error("on_wake called at " + format_seconds(now) + " s, expected " +
                                                     format_seconds(state.next_wake) + " s");
  WakeResult r;
  r.state = state;
  r.state.mode_since = now;
  r.state.next_wake = now + config.beacon_period;
  const SimTime listen_from = now + config.listen_offset();
  const SimTime listen_to = listen_from + config.listen_window;

  if (channel && frame_detectable(*channel, listen_from, listen_to, config.radio)) {
    r.frame_detected = true;
    r.state.mode = DeviceMode::receiving;
    r.awake = std::max(channel->start, listen_from) - now;
    return r;
  }
  r.state.mode = DeviceMode::sleeping;
  r.awake = config.listen_offset() + config.listen_window;
  return r;
}

std::string_view to_string(ReceiveVerdict verdict) {
  switch (verdict) {
    case ReceiveVerdict::accepted:
      return "accepted";
    case ReceiveVerdict::discarded_early:
      return "discarded_early";
    case ReceiveVerdict::discarded_after_full_rx:
      return "discarded_after_full_rx";
  }
  return "unknown";
}

namespace {

bool mac_matches(const DeviceState& state, const DeviceConfig& config, const ApMac& received) {
  const ApMacGenerator gen(state.token_state.shared_key);
  const std::uint64_t k = state.token_state.token;
  if (gen.verify(received, k)) return true;
  for (std::uint64_t d = 1; d <= config.mac_tolerance_frames; ++d)
    if (gen.verify(received, k - d) || gen.verify(received, k + d)) return true;
  return false;
}

}  // namespace

ReceiveResult receive_path(const DeviceState& state, const DeviceConfig& config, const IncomingFrame& in) {
  const std::size_t phy = phy_payload_size(in.frame);
  const bool from_gateway = in.sender == Sender::gateway;
  ReceiveResult r;

  if (!config.ap_enabled) {
    r.duration = airtime(config.radio, phy, layout_of(in.frame) == FrameLayout::ap);
    r.verdict = from_gateway ? ReceiveVerdict::accepted : ReceiveVerdict::discarded_after_full_rx;
    return r;
  }

  r.ap_decision = ap_decision_airtime(config.radio);
  const auto* ap = std::get_if<ApFrame>(&in.frame);
  // A legacy frame has no MAC field; whatever follows its sync word fails
  // verification.
  if (!ap || !mac_matches(state, config, ap->ap_mac)) {
    r.verdict = ReceiveVerdict::discarded_early;
    r.duration = *r.ap_decision;
    return r;
  }
  r.duration = airtime(config.radio, phy, true);
  r.verdict = from_gateway ? ReceiveVerdict::accepted : ReceiveVerdict::discarded_after_full_rx;
  return r;
}

Uplink scheduled_uplink(const DeviceState&, const DeviceConfig& config, SimTime) {
  Uplink u;
  u.kind = UplinkKind::data;
  u.frame = make_uplink_frame(config, Bytes(config.uplink_payload, 0xa5), 1);
  u.airtime = config.uplink_airtime_override ? *config.uplink_airtime_override
                                             : airtime(config.radio, phy_payload_size(u.frame), false);
  return u;
}

Uplink token_announcement(const DeviceState& state, const DeviceConfig& config) {
  Uplink u;
  u.kind = UplinkKind::token_announcement;
  u.frame = make_uplink_frame(config, encode_token_announcement(state.token_state.token), 2);
  u.airtime = airtime(config.radio, phy_payload_size(u.frame), false);
  return u;
}

bool transition_allowed(DeviceMode from, DeviceMode to, bool ap_enabled, bool ap_verified) {
  using M = DeviceMode;
  switch (from) {
    case M::sleeping:
      return to == M::transmitting || (ap_enabled ? to == M::verifying_ap : to == M::listening);
    case M::verifying_ap:
      return ap_enabled && (to == M::listening || to == M::sleeping || to == M::receiving);
    case M::listening:
      return to == M::receiving || to == M::sleeping;
    case M::receiving:
      if (to == M::verifying_ap) return ap_enabled && !ap_verified;
      return to == M::sleeping && (!ap_enabled || ap_verified);
    case M::transmitting:
      return to == M::sleeping;
  }
  return false;
}

EndDevice::EndDevice(DeviceConfig config, EnergyParams energy, DeviceState state, EventTrace* trace)
    : config_(std::move(config)), energy_(energy), state_(std::move(state)), trace_(trace) {
  if (trace_) trace_->record_mode(state_.mode_since, state_.mode, energy_.current_ma(state_.mode));
}

void EndDevice::set_mode(DeviceMode next, SimTime now) {
  if (next == state_.mode) return;
  if (!transition_allowed(state_.mode, next, config_.ap_enabled, ap_verified_))
    throw std::logic_error(std::string("illegal device transition ") + std::string(to_string(state_.mode)) + " -> " +
                           std::string(to_string(next)));
  state_.ledger.accrue(state_.mode, now - state_.mode_since, energy_);
  state_.mode = next;
  state_.mode_since = now;
  if (next == DeviceMode::sleeping) ap_verified_ = false;
  if (trace_) trace_->record_mode(now, next, energy_.current_ma(next));
}

void EndDevice::advance_frame(SimTime frame_start) {
  ++state_.frame_index;
  ++state_.token_state.token;
  state_.token_state.origin_time = frame_start;
}

void EndDevice::finish(SimTime end) {
  state_.ledger.accrue(state_.mode, end - state_.mode_since, energy_);
  state_.mode_since = end;
}

}  // namespace lora_ap
