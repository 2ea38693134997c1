#pragma once

#include <stdexcept>
#include <string>

namespace lora_ap {

// Invalid configuration values (radio, device, energy, scenario).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CodecErrorKind { payload_too_long, truncated_frame, crc_mismatch, malformed };

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  CodecErrorKind kind() const noexcept { return kind_; }

 private:
  CodecErrorKind kind_;
};

// Frame-counter prediction asked for a time before the synchronized frame.
class TimeBeforeOriginError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// negative-duration, zero-horizon, zero-drain
class EnergyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnknownDeviceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario file could not be read or parsed.
class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lora_ap
