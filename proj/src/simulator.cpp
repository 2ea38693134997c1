#include "lora_ap/simulator.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "lora_ap/adversary.hpp"
#include "lora_ap/device.hpp"
#include "lora_ap/gateway.hpp"

namespace lora_ap {

std::uint64_t derive_seed(std::uint64_t scenario_seed, std::uint64_t stream) {
  // splitmix64 over (seed, stream)
  std::uint64_t z = scenario_seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

constexpr DeviceId kDeviceId = 1;
constexpr std::uint64_t kBootStream = 1;
constexpr std::uint64_t kAttackerStream = 2;

enum class Kind : std::uint8_t {
  frame_start,
  wake,
  listen_start,
  listen_end,
  ap_decision,
  rx_end,
  tx_end,
  uplink_due,
  announcement_due,
  attack_send,
  downlink_request,
  downlink_send,
  announcement_rx,
};

struct Event {
  SimTime time;
  Actor actor;
  std::uint64_t seq;
  Kind kind;
  std::uint64_t a = 0;
  std::int64_t b = 0;
};

struct Later {
  bool operator()(const Event& x, const Event& y) const {
    if (x.time != y.time) return x.time > y.time;
    if (x.actor != y.actor) return x.actor > y.actor;
    // A new frame's counter is in force for everything else at that instant.
    const bool xf = x.kind == Kind::frame_start, yf = y.kind == Kind::frame_start;
    if (xf != yf) return yf;
    return x.seq > y.seq;
  }
};

struct OnAir {
  IncomingFrame frame;
  SimTime end;
  bool locked = false;
  std::uint64_t attack_window = 0;
};

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg)
      : cfg_(cfg),
        device_cfg_(with_boot_seed(cfg)),
        boot_(boot(device_cfg_)),
        device_(device_cfg_, cfg.energy, boot_.state, &result_.trace),
        attacker_(cfg.attacker, cfg.device.radio, derive_seed(cfg.rng_seed, kAttackerStream)) {
    gateway_.beacon_period = device_cfg_.beacon_period;
    gateway_.provisioned_keys[kDeviceId] = device_cfg_.ap_key;
    result_.stats.boot_token = boot_.state.token_state.token;
  }

  SimulationResult run() {
    result_.trace.record(SimTime::zero(), Actor::device, "boot",
                         "token=" + std::to_string(boot_.state.token_state.token));
    push(SimTime::zero(), Actor::device, Kind::frame_start, device_.state().frame_index);
    if (device_cfg_.announce_at_boot) {
      tx_queue_.push_back(boot_.announcement);
    } else {
      gateway_on_announcement(gateway_, kDeviceId, boot_.state.token_state.token, SimTime::zero());
      trace(SimTime::zero(), Actor::gateway, "token_synchronized",
            "token=" + std::to_string(boot_.state.token_state.token) + " provisioned");
    }
    last_announcement_ = SimTime::zero();
    push(device_cfg_.token_retransmit_interval, Actor::device, Kind::announcement_due);
    push(device_cfg_.uplink_offset, Actor::device, Kind::uplink_due);
    start_tx_if_idle(SimTime::zero());
    schedule_next_attack(SimTime::zero());
    for (std::size_t i = 0; i < cfg_.gateway_downlink_schedule.size(); ++i)
      push(cfg_.gateway_downlink_schedule[i].time, Actor::gateway, Kind::downlink_request, i);

    while (!queue_.empty()) {
      const Event ev = queue_.top();
      if (ev.time >= cfg_.horizon) break;
      queue_.pop();
      dispatch(ev);
    }

    for (auto& f : channel_) f.end = std::min(f.end, cfg_.horizon);
    purge_channel(cfg_.horizon);
    device_.finish(cfg_.horizon);
    result_.trace.set_end(cfg_.horizon);
    result_.ledger = device_.state().ledger;
    return std::move(result_);
  }

 private:
  const ScenarioConfig& cfg_;
  DeviceConfig device_cfg_;
  BootResult boot_;
  SimulationResult result_;
  EndDevice device_;
  Attacker attacker_;
  GatewayState gateway_;

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t seq_ = 0;
  std::uint64_t epoch_ = 0;

  std::vector<OnAir> channel_;
  std::optional<OnAir> locked_;
  ReceiveResult pending_rx_;
  std::optional<AttackFrame> next_attack_;

  std::deque<Uplink> tx_queue_;
  std::optional<Uplink> in_flight_;
  SimTime tx_start_{0};
  SimTime last_announcement_{0};

  static DeviceConfig with_boot_seed(const ScenarioConfig& cfg) {
    cfg.validate();
    DeviceConfig d = cfg.device;
    if (d.boot_seed.mode == BootTokenSeed::Mode::random)
      d.boot_seed = BootTokenSeed::random(derive_seed(cfg.rng_seed, kBootStream));
    return d;
  }

  void push(SimTime t, Actor actor, Kind kind, std::uint64_t a = 0, std::int64_t b = 0) {
    if (t >= cfg_.horizon) return;
    queue_.push(Event{t, actor, seq_++, kind, a, b});
  }

  void trace(SimTime t, Actor actor, std::string kind, std::string detail = {}) {
    result_.trace.record(t, actor, std::move(kind), std::move(detail));
  }

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case Kind::frame_start:
        return on_frame_start(ev.time, ev.a);
      case Kind::wake:
        return on_wake_event(ev.time, ev.a);
      case Kind::listen_start:
        if (ev.a == epoch_) start_listening(ev.time);
        return;
      case Kind::listen_end:
        if (ev.a == epoch_ && device_.mode() == DeviceMode::listening) {
          device_.set_mode(DeviceMode::sleeping, ev.time);
          start_tx_if_idle(ev.time);
        }
        return;
      case Kind::ap_decision:
        if (ev.a == epoch_) on_ap_decision(ev.time);
        return;
      case Kind::rx_end:
        if (ev.a == epoch_) on_rx_end(ev.time);
        return;
      case Kind::tx_end:
        if (ev.a == epoch_) on_tx_end(ev.time);
        return;
      case Kind::uplink_due:
        tx_queue_.push_back(scheduled_uplink(device_.state(), device_cfg_, ev.time));
        trace(ev.time, Actor::device, "uplink_queued", "data");
        push(ev.time + device_cfg_.uplink_period, Actor::device, Kind::uplink_due);
        start_tx_if_idle(ev.time);
        return;
      case Kind::announcement_due:
        if (token_announcement_due(device_.state().token_state, ev.time, device_cfg_.token_retransmit_interval,
                                   last_announcement_)) {
          tx_queue_.push_back(token_announcement(device_.state(), device_cfg_));
          trace(ev.time, Actor::device, "uplink_queued", "token_announcement");
          last_announcement_ = ev.time;
        }
        push(last_announcement_ + device_cfg_.token_retransmit_interval, Actor::device, Kind::announcement_due);
        start_tx_if_idle(ev.time);
        return;
      case Kind::attack_send:
        return on_attack_send(ev.time);
      case Kind::downlink_request:
        return on_downlink_request(ev.time, ev.a);
      case Kind::downlink_send:
        return on_downlink_send(ev.time, ev.a, static_cast<std::uint64_t>(ev.b));
      case Kind::announcement_rx:
        gateway_on_announcement(gateway_, kDeviceId, ev.a, SimTime{ev.b});
        trace(ev.time, Actor::gateway, "token_synchronized", "token=" + std::to_string(ev.a));
        return;
    }
  }

  // Device -----------------------------------------------------------------

  void on_frame_start(SimTime now, std::uint64_t frame) {
    if (frame != device_.state().frame_index) device_.advance_frame(now);
    push(device_cfg_.wake_time(frame), Actor::device, Kind::wake, frame);
    push(device_cfg_.frame_start(frame + 1), Actor::device, Kind::frame_start, frame + 1);
  }

  void on_wake_event(SimTime now, std::uint64_t frame) {
    ++result_.stats.wakes;
    device_.set_next_wake(device_cfg_.wake_time(frame + 1));
    if (device_.mode() != DeviceMode::sleeping) {
      ++result_.stats.slots_missed;
      trace(now, Actor::device, "slot_missed", std::string(to_string(device_.mode())));
      return;
    }
    trace(now, Actor::device, "wake", "frame=" + std::to_string(frame));
    ++epoch_;
    if (device_cfg_.ap_enabled) {
      device_.set_mode(DeviceMode::verifying_ap, now);
      push(now + device_cfg_.ap_verify_time, Actor::device, Kind::listen_start, epoch_);
    } else {
      start_listening(now);
    }
  }

  void start_listening(SimTime now) {
    device_.set_mode(DeviceMode::listening, now);
    const SimTime until = now + device_cfg_.listen_window;
    purge_channel(now);
    for (auto& f : channel_) {
      if (!f.locked && frame_detectable(f.frame, now, until, device_cfg_.radio)) {
        lock(now, f);
        return;
      }
    }
    push(until, Actor::device, Kind::listen_end, epoch_);
  }

  void lock(SimTime now, OnAir& f) {
    f.locked = true;
    locked_ = f;
    ++epoch_;
    ++result_.stats.frames_received;
    device_.set_mode(DeviceMode::receiving, now);
    trace(now, Actor::device, "rx_start", sender_name(f.frame.sender));
    pending_rx_ = receive_path(device_.state(), device_cfg_, f.frame);
    if (pending_rx_.ap_decision)
      push(f.frame.start + *pending_rx_.ap_decision, Actor::device, Kind::ap_decision, epoch_);
    else
      push(f.frame.start + pending_rx_.duration, Actor::device, Kind::rx_end, epoch_);
  }

  void on_ap_decision(SimTime now) {
    device_.set_mode(DeviceMode::verifying_ap, now);
    if (pending_rx_.verdict == ReceiveVerdict::discarded_early) {
      trace(now, Actor::device, "ap_reject", sender_name(locked_->frame.sender));
      ++result_.stats.discarded_early;
      if (locked_->frame.sender == Sender::gateway) ++result_.stats.downlinks_rejected;
      locked_.reset();
      device_.set_mode(DeviceMode::sleeping, now);
      start_tx_if_idle(now);
      return;
    }
    trace(now, Actor::device, "ap_accept", sender_name(locked_->frame.sender));
    if (locked_->frame.sender == Sender::attacker) record_forgery(now);
    device_.mark_ap_verified();
    device_.set_mode(DeviceMode::receiving, now);
    push(locked_->frame.start + pending_rx_.duration, Actor::device, Kind::rx_end, epoch_);
  }

  void on_rx_end(SimTime now) {
    const bool legit = locked_->frame.sender == Sender::gateway;
    trace(now, Actor::device, "rx_end", std::string(to_string(pending_rx_.verdict)) + " from " +
                                            sender_name(locked_->frame.sender));
    if (pending_rx_.verdict == ReceiveVerdict::accepted) {
      if (legit) ++result_.stats.downlinks_accepted;
    } else {
      ++result_.stats.discarded_after_full_rx;
      if (legit) ++result_.stats.downlinks_rejected;
    }
    locked_.reset();
    device_.set_mode(DeviceMode::sleeping, now);
    start_tx_if_idle(now);
  }

  void record_forgery(SimTime now) {
    ++result_.stats.forgeries_accepted;
    const auto* ap = std::get_if<ApFrame>(&locked_->frame.frame);
    ForgeryRecord r{now, cfg_.rng_seed, locked_->attack_window, device_.state().token_state.token,
                    ap ? to_hex(ap->ap_mac) : std::string()};
    trace(now, Actor::device, "forgery_accepted",
          "seed=" + std::to_string(r.rng_seed) + " window=" + std::to_string(r.window) +
              " token=" + std::to_string(r.device_token) + " mac=" + r.mac_hex);
    result_.forgeries.push_back(std::move(r));
  }

  void start_tx_if_idle(SimTime now) {
    if (device_.mode() != DeviceMode::sleeping || tx_queue_.empty()) return;
    Uplink u = std::move(tx_queue_.front());
    tx_queue_.pop_front();
    // The announcement carries the counter of the frame it is sent in.
    if (u.kind == UplinkKind::token_announcement) u = token_announcement(device_.state(), device_cfg_);
    ++epoch_;
    device_.set_mode(DeviceMode::transmitting, now);
    trace(now, Actor::device, "tx_start",
          u.kind == UplinkKind::data ? std::string("data")
                                     : "token_announcement token=" + std::to_string(device_.state().token_state.token));
    tx_start_ = now;
    push(now + u.airtime, Actor::device, Kind::tx_end, epoch_);
    in_flight_ = std::move(u);
  }

  void on_tx_end(SimTime now) {
    trace(now, Actor::device, "tx_end");
    if (in_flight_->kind == UplinkKind::token_announcement) {
      ++result_.stats.announcements_sent;
      auto token = decode_token_announcement(
          std::span(in_flight_->frame.payload).first(in_flight_->frame.payload.size() - kLorawanMicSize));
      push(now, Actor::gateway, Kind::announcement_rx, *token, tx_start_.count());
    } else {
      ++result_.stats.data_uplinks_sent;
    }
    in_flight_.reset();
    device_.set_mode(DeviceMode::sleeping, now);
    start_tx_if_idle(now);
  }

  // Channel ----------------------------------------------------------------

  static std::string sender_name(Sender s) { return s == Sender::gateway ? "gateway" : "attacker"; }

  void purge_channel(SimTime now) {
    std::erase_if(channel_, [&](const OnAir& f) {
      if (f.end > now) return false;
      if (!f.locked && f.frame.sender == Sender::gateway) {
        ++result_.stats.downlinks_missed;
        trace(now, Actor::device, "frame_missed", "gateway");
      }
      return true;
    });
  }

  void put_on_air(SimTime now, IncomingFrame frame, std::uint64_t attack_window = 0) {
    purge_channel(now);
    const bool ap = layout_of(frame.frame) == FrameLayout::ap;
    OnAir f{std::move(frame), SimTime{}, false, attack_window};
    f.end = f.frame.start + airtime(device_cfg_.radio, phy_payload_size(f.frame.frame), ap);
    channel_.push_back(std::move(f));
    OnAir& entry = channel_.back();
    if (device_.mode() == DeviceMode::listening &&
        frame_detectable(entry.frame, now, now + device_cfg_.listen_window, device_cfg_.radio))
      lock(now, entry);
  }

  // Attacker ---------------------------------------------------------------

  void schedule_next_attack(SimTime from) {
    next_attack_ = attacker_.next_attack_frame(DeviceSchedule::of(device_cfg_), from);
    if (next_attack_) push(next_attack_->frame.start, Actor::attacker, Kind::attack_send);
  }

  void on_attack_send(SimTime now) {
    ++result_.stats.attack_frames_sent;
    trace(now, Actor::attacker, "attack_frame",
          "window=" + std::to_string(next_attack_->window) + " bytes=" + std::to_string(phy_payload_size(next_attack_->frame.frame)));
    AttackFrame f = std::move(*next_attack_);
    next_attack_.reset();
    put_on_air(now, std::move(f.frame), f.window);
    schedule_next_attack(now + SimTime{1});
  }

  // Gateway ----------------------------------------------------------------

  std::uint64_t next_slot(SimTime t) const {
    const SimTime first = device_cfg_.listen_start(0);
    if (t <= first) return 0;
    return static_cast<std::uint64_t>((t - first + device_cfg_.beacon_period - SimTime{1}) / device_cfg_.beacon_period);
  }

  void on_downlink_request(SimTime now, std::uint64_t index) {
    const std::uint64_t slot = next_slot(now);
    trace(now, Actor::gateway, "downlink_queued", "slot=" + std::to_string(slot));
    push(device_cfg_.listen_start(slot), Actor::gateway, Kind::downlink_send, index, static_cast<std::int64_t>(slot));
  }

  void on_downlink_send(SimTime now, std::uint64_t index, std::uint64_t slot) {
    const Bytes& payload = cfg_.gateway_downlink_schedule[index].payload;
    IncomingFrame in;
    in.sender = Sender::gateway;
    in.start = now;
    if (device_cfg_.ap_enabled) {
      if (!gateway_.knows(kDeviceId)) {
        ++result_.stats.downlinks_deferred;
        trace(now, Actor::gateway, "downlink_deferred", "unknown-device");
        push(device_cfg_.listen_start(slot + 1), Actor::gateway, Kind::downlink_send, index,
             static_cast<std::int64_t>(slot + 1));
        return;
      }
      ApFrame f = gateway_send_downlink(gateway_, kDeviceId, payload, now,
                                        static_cast<std::uint16_t>(device_cfg_.radio.preamble_symbols));
      const auto k = predict_frame_counter(gateway_.known_tokens.at(kDeviceId), now);
      trace(now, Actor::gateway, "downlink_sent", "counter=" + std::to_string(k) + " mac=" + to_hex(f.ap_mac));
      in.frame = std::move(f);
    } else {
      LegacyFrame f;
      f.preamble_symbols = static_cast<std::uint16_t>(device_cfg_.radio.preamble_symbols);
      f.header = lorawan_header(kDeviceId, 0, 1);
      f.payload = payload;
      f.payload.insert(f.payload.end(), kLorawanMicSize, 0x00);
      trace(now, Actor::gateway, "downlink_sent", "legacy");
      in.frame = std::move(f);
    }
    ++result_.stats.downlinks_sent;
    put_on_air(now, std::move(in));
  }
};

}  // namespace

SimulationResult run_scenario(const ScenarioConfig& cfg) { return Simulation(cfg).run(); }

}  // namespace lora_ap
