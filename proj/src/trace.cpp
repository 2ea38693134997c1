#include "lora_ap/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>

namespace lora_ap {

std::string_view to_string(Actor actor) {
  switch (actor) {
    case Actor::gateway:
      return "gateway";
    case Actor::attacker:
      return "attacker";
    case Actor::device:
      return "device";
  }
  return "unknown";
}

void EventTrace::record(SimTime time, Actor actor, std::string kind, std::string detail) {
  events_.push_back({time, actor, std::move(kind), std::move(detail)});
}

void EventTrace::record_mode(SimTime time, DeviceMode mode, double current_ma) {
  record(time, Actor::device, "mode", std::string(to_string(mode)));
  segments_.push_back({time, mode, current_ma});
}

double EventTrace::current_at(SimTime t) const {
  if (segments_.empty() || t < segments_.front().start || t >= end_) return 0.0;
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](SimTime v, const ModeSegment& s) { return v < s.start; });
  return std::prev(it)->current_ma;
}

std::vector<AwakeInterval> EventTrace::awake_intervals() const {
  std::vector<AwakeInterval> out;
  std::optional<AwakeInterval> open;
  for (const auto& seg : segments_) {
    if (seg.mode == DeviceMode::sleeping) {
      if (open) {
        open->end = seg.start;
        if (open->end > open->start) out.push_back(*open);
        open.reset();
      }
      continue;
    }
    if (!open) open = AwakeInterval{seg.start, seg.start};
    if (seg.mode == DeviceMode::transmitting) open->transmitted = true;
    if (seg.mode == DeviceMode::receiving) open->received = true;
  }
  if (open) {
    open->end = end_;
    if (open->end > open->start) out.push_back(*open);
  }
  return out;
}

std::size_t EventTrace::count(std::string_view kind) const {
  return static_cast<std::size_t>(
      std::count_if(events_.begin(), events_.end(), [&](const TraceEvent& e) { return e.kind == kind; }));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace

void export_trace(const EventTrace& trace, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "timestamp_s,actor,event,detail\n";
  for (const auto& e : trace.events())
    out << format_seconds(e.time) << ',' << to_string(e.actor) << ',' << csv_field(e.kind) << ','
        << csv_field(e.detail) << '\n';
  finish(out, path);
}

std::size_t current_sample_count(const EventTrace& trace, double sample_rate_hz) {
  if (!(sample_rate_hz > 0)) throw std::invalid_argument("sample rate must be > 0");
  return static_cast<std::size_t>(std::llround(std::floor(to_seconds(trace.end()) * sample_rate_hz + 1e-9)));
}

void export_current(const EventTrace& trace, const std::filesystem::path& path, double sample_rate_hz) {
  const std::size_t n = current_sample_count(trace, sample_rate_hz);
  auto out = open_for_write(path);
  out << "timestamp_s,current_mA\n";

  const auto& segs = trace.segments();
  std::size_t seg = 0;
  std::string buf;
  char line[64];
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = from_seconds(static_cast<double>(i) / sample_rate_hz);
    while (seg + 1 < segs.size() && segs[seg + 1].start <= t) ++seg;
    const double ma = (segs.empty() || t < segs[seg].start) ? 0.0 : segs[seg].current_ma;
    const auto ts = format_seconds(t);
    std::snprintf(line, sizeof line, "%s,%.3f\n", ts.c_str(), ma);
    buf += line;
    if (buf.size() > (1 << 16)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
  finish(out, path);
}

}  // namespace lora_ap
