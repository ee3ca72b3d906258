#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iam4vho {

// Simulation time in integer microseconds. Everything inside the engine is
// ordered on this clock; seconds only appear at the edges (config, reports).
using SimTime = std::int64_t;

inline constexpr SimTime kMicrosPerSecond = 1'000'000;

inline SimTime seconds_to_time(double s) {
  return static_cast<SimTime>(std::llround(s * static_cast<double>(kMicrosPerSecond)));
}

inline double time_to_seconds(SimTime t) {
  return static_cast<double>(t) / static_cast<double>(kMicrosPerSecond);
}

using RatId = std::int64_t;
using MuId = std::int64_t;
using SessionId = std::int64_t;
using OperatorId = std::string;

// Capacity, load and demand are whole bandwidth units so that a reservation
// followed by its release restores the load exactly.
using Bandwidth = std::int64_t;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double k) { return {a.x * k, a.y * k}; }
  friend bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

//-----------------------------------------------------------------------------
// Errors
//-----------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the scenario loader; `path` names the offending field, e.g.
// "rats[2].radius_m".
struct ValidationError : Error {
  ValidationError(std::string field_path, const std::string& what)
      : Error(field_path + ": " + what), path(std::move(field_path)) {}
  std::string path;
};

struct UnknownSession : Error {
  explicit UnknownSession(SessionId id)
      : Error("unknown session " + std::to_string(id)), session(id) {}
  SessionId session;
};

struct IllegalState : Error {
  using Error::Error;
};

struct NoAddressAvailable : Error {
  explicit NoAddressAvailable(RatId rat)
      : Error("care-of address pool exhausted on rat " + std::to_string(rat)), rat(rat) {}
  RatId rat;
};

struct InvalidSchedule : Error {
  using Error::Error;
};

struct EmptyCandidateSet : Error {
  EmptyCandidateSet() : Error("no candidate RATs for handover") {}
};

//-----------------------------------------------------------------------------
// Radio access technologies
//-----------------------------------------------------------------------------

enum class RatKind { GSM, UMTS, WiFi, WiMAX, LTE };

inline constexpr RatKind kAllRatKinds[] = {RatKind::GSM, RatKind::UMTS, RatKind::WiFi,
                                           RatKind::WiMAX, RatKind::LTE};

inline std::string_view to_string(RatKind k) {
  switch (k) {
    case RatKind::GSM: return "GSM";
    case RatKind::UMTS: return "UMTS";
    case RatKind::WiFi: return "WiFi";
    case RatKind::WiMAX: return "WiMAX";
    case RatKind::LTE: return "LTE";
  }
  return "?";
}

inline std::optional<RatKind> parse_rat_kind(std::string_view s) {
  for (RatKind k : kAllRatKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

}  // namespace iam4vho
