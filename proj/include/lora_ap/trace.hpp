#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lora_ap/energy.hpp"
#include "lora_ap/sim_time.hpp"

namespace lora_ap {

// Declaration order is the tie-break priority for simultaneous events.
enum class Actor : std::uint8_t { gateway = 0, attacker = 1, device = 2 };

std::string_view to_string(Actor actor);

struct TraceEvent {
  SimTime time;
  Actor actor;
  std::string kind;
  std::string detail;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct ModeSegment {
  SimTime start;
  DeviceMode mode;
  double current_ma;

  friend bool operator==(const ModeSegment&, const ModeSegment&) = default;
};

// Awake period: from leaving sleep until returning to it.
struct AwakeInterval {
  SimTime start;
  SimTime end;
  bool transmitted = false;  // contains a transmitting segment
  bool received = false;     // contains a receiving segment

  SimTime duration() const { return end - start; }
};

class EventTrace {
 public:
  void record(SimTime time, Actor actor, std::string kind, std::string detail = {});
  // Records a device mode change as both an event and a current segment.
  void record_mode(SimTime time, DeviceMode mode, double current_ma);
  void set_end(SimTime end) { end_ = end; }

  const std::vector<TraceEvent>& events() const { return events_; }
  const std::vector<ModeSegment>& segments() const { return segments_; }
  SimTime end() const { return end_; }

  // Current at time t (step function over the mode segments); 0 outside.
  double current_at(SimTime t) const;

  std::vector<AwakeInterval> awake_intervals() const;

  std::size_t count(std::string_view kind) const;

  friend bool operator==(const EventTrace&, const EventTrace&) = default;

 private:
  std::vector<TraceEvent> events_;
  std::vector<ModeSegment> segments_;
  SimTime end_{0};
};

// CSV header `timestamp_s,actor,event,detail`. Details containing commas or
// quotes are quoted. Throws std::runtime_error on I/O failure.
void export_trace(const EventTrace& trace, const std::filesystem::path& path);

// CSV header `timestamp_s,current_mA`, one row per sample at i / rate for
// i in [0, end * rate).
void export_current(const EventTrace& trace, const std::filesystem::path& path, double sample_rate_hz);

std::size_t current_sample_count(const EventTrace& trace, double sample_rate_hz);

}  // namespace lora_ap
