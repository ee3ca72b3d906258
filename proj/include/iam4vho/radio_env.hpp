#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "iam4vho/core.hpp"

namespace iam4vho {

// Operator rules a destination PoS applies after admission control.
// An empty allowlist with no roaming entries admits every operator.
struct PolicyRule {
  std::set<OperatorId> allowed_operator_ids;
  Bandwidth min_demand = 0;
  std::map<OperatorId, bool> roaming_allowed;

  bool open() const { return allowed_operator_ids.empty() && roaming_allowed.empty(); }
};

struct RatDescriptor {
  RatId id = 0;
  RatKind kind = RatKind::WiFi;
  Vec2 poa_position;
  double coverage_radius = 1.0;   // m
  double tx_power = 0.0;          // dBm
  double pathloss_exponent = 2.0;
  double ref_distance = 1.0;      // m
  double ref_loss = 0.0;          // dB
  Bandwidth capacity = 1;
  Bandwidth load = 0;
  double cost = 0.0;
  double data_rate = 1.0;         // Mbps
  OperatorId operator_id;
  PolicyRule policy;
  std::set<std::string> capabilities;
  std::size_t coa_pool_size = 256;
};

struct PreferenceWeights {
  double weight_rate = 0.5;
  double weight_cost = 0.5;
};

enum class MobilityModel { Stationary, Linear, RandomWaypoint };

struct RandomWaypointParams {
  Vec2 area_min;
  Vec2 area_max;
  double speed = 1.0;  // m/s
};

struct Attachment {
  RatId rat = 0;
  std::string care_of_address;
};

struct MobileUser {
  MuId id = 0;
  Vec2 position;
  Vec2 velocity;
  MobilityModel mobility_model = MobilityModel::Stationary;
  RandomWaypointParams waypoint_params;
  std::optional<Vec2> waypoint;
  PreferenceWeights preferences;
  OperatorId home_operator;
  Bandwidth demand = 1;
  std::optional<Attachment> attachment;
};

struct RssReading {
  RatId rat_id = 0;
  double value = 0.0;  // dBm
  SimTime time = 0;
};

//-----------------------------------------------------------------------------
// Random streams
//-----------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent generator for (seed, stream); streams never share state.
inline Rng make_stream_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(seed ^ splitmix64(stream + 1)));
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

//-----------------------------------------------------------------------------
// Propagation and coverage
//-----------------------------------------------------------------------------

inline bool covers(const RatDescriptor& rat, Vec2 pos) {
  return distance(rat.poa_position, pos) <= rat.coverage_radius;
}

// Log-distance path loss, no fading. Empty outside the closed coverage disk.
inline std::optional<double> rss_at(const RatDescriptor& rat, Vec2 pos) {
  const double d = distance(rat.poa_position, pos);
  if (d > rat.coverage_radius) return std::nullopt;
  const double clamped = std::max(d, rat.ref_distance);
  return rat.tx_power - rat.ref_loss -
         10.0 * rat.pathloss_exponent * std::log10(clamped / rat.ref_distance);
}

// Optional zero-mean Gaussian shadowing on top of rss_at; sigma 0 disables it
// and leaves the generator untouched.
inline std::optional<double> rss_with_noise(const RatDescriptor& rat, Vec2 pos, double sigma_db,
                                            Rng& rng) {
  auto v = rss_at(rat, pos);
  if (!v || sigma_db <= 0.0) return v;
  std::normal_distribution<double> noise(0.0, sigma_db);
  return *v + noise(rng);
}

// RATs whose coverage disk contains `pos`, ascending id.
inline std::vector<RatDescriptor> visible_rats(Vec2 pos, std::span<const RatDescriptor> rats) {
  std::vector<RatDescriptor> out;
  for (const auto& r : rats) {
    if (covers(r, pos)) out.push_back(r);
  }
  std::sort(out.begin(), out.end(),
            [](const RatDescriptor& a, const RatDescriptor& b) { return a.id < b.id; });
  return out;
}

//-----------------------------------------------------------------------------
// Mobility
//-----------------------------------------------------------------------------

namespace detail {

inline Vec2 draw_waypoint(const RandomWaypointParams& p, Rng& rng) {
  const double ux = uniform01(rng);
  const double uy = uniform01(rng);
  return {p.area_min.x + ux * (p.area_max.x - p.area_min.x),
          p.area_min.y + uy * (p.area_max.y - p.area_min.y)};
}

}  // namespace detail

// Advances one user by dt seconds. Random-waypoint has zero pause time; on
// arrival the next waypoint is drawn and the remainder of the step is spent
// heading toward it.
inline MobileUser step_mobility(MobileUser mu, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_mobility: dt must be positive");

  switch (mu.mobility_model) {
    case MobilityModel::Stationary:
      break;
    case MobilityModel::Linear:
      mu.position = mu.position + mu.velocity * dt;
      break;
    case MobilityModel::RandomWaypoint: {
      const double speed = mu.waypoint_params.speed;
      double remaining = speed * dt;
      if (!mu.waypoint) mu.waypoint = detail::draw_waypoint(mu.waypoint_params, rng);
      // Bounded: a degenerate (zero-area) box would otherwise spin forever.
      for (int hops = 0; remaining > 0.0 && hops < 64; ++hops) {
        const Vec2 to = *mu.waypoint - mu.position;
        const double len = to.norm();
        if (len > remaining) {
          mu.position = mu.position + to * (remaining / len);
          mu.velocity = to * (speed / len);
          remaining = 0.0;
        } else {
          mu.position = *mu.waypoint;
          remaining -= len;
          mu.waypoint = detail::draw_waypoint(mu.waypoint_params, rng);
        }
      }
      break;
    }
  }
  return mu;
}

}  // namespace iam4vho
