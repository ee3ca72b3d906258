#include <cmath>

#include <gtest/gtest.h>

#include "gen.hpp"
#include "iam4vho/radio_env.hpp"

using namespace iam4vho;

namespace {

RatDescriptor reference_rat() {
  RatDescriptor r;
  r.id = 1;
  r.poa_position = {0.0, 0.0};
  r.coverage_radius = 100.0;
  r.tx_power = 30.0;
  r.ref_loss = 40.0;
  r.ref_distance = 1.0;
  r.pathloss_exponent = 2.0;
  return r;
}

}  // namespace

TEST(RssAt, ReferenceDistanceHasNoLogTerm) {
  const auto v = rss_at(reference_rat(), {1.0, 0.0});
  ASSERT_TRUE(v);
  EXPECT_DOUBLE_EQ(*v, -10.0);
}

TEST(RssAt, TenTimesReferenceDistanceWithExponentTwo) {
  const auto v = rss_at(reference_rat(), {10.0, 0.0});
  ASSERT_TRUE(v);
  EXPECT_NEAR(*v, -30.0, 1e-12);
}

TEST(RssAt, OutsideCoverageIsAbsent) {
  EXPECT_FALSE(rss_at(reference_rat(), {100.5, 0.0}));
}

TEST(RssAt, ClampsBelowReferenceDistance) {
  const auto v = rss_at(reference_rat(), {0.0, 0.0});
  ASSERT_TRUE(v);
  EXPECT_DOUBLE_EQ(*v, -10.0);
}

TEST(RssAt, StrictlyDecreasingInDistance) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const RatDescriptor r = gen::rat(rng, 1);
    const double lo = r.ref_distance;
    const double hi = r.coverage_radius;
    if (hi <= lo) continue;
    double d1 = gen::real(rng, lo, hi);
    double d2 = gen::real(rng, lo, hi);
    if (d1 == d2) continue;
    if (d1 > d2) std::swap(d1, d2);
    const Vec2 p1 = r.poa_position + Vec2{d1, 0.0};
    const Vec2 p2 = r.poa_position + Vec2{d2, 0.0};
    ASSERT_GT(*rss_at(r, p1), *rss_at(r, p2)) << "trial " << trial;
  }
}

TEST(StepMobility, StationaryZeroVelocityUnchanged) {
  MobileUser mu;
  mu.position = {3.0, 4.0};
  Rng rng(1);
  EXPECT_EQ(step_mobility(mu, 7.5, rng).position, mu.position);
  mu.mobility_model = MobilityModel::Linear;
  EXPECT_EQ(step_mobility(mu, 7.5, rng).position, mu.position);
}

TEST(StepMobility, LinearAdvancesByVelocityTimesDt) {
  MobileUser mu;
  mu.mobility_model = MobilityModel::Linear;
  mu.velocity = {1.0, 0.0};
  Rng rng(1);
  const MobileUser next = step_mobility(mu, 2.0, rng);
  EXPECT_DOUBLE_EQ(next.position.x, 2.0);
  EXPECT_DOUBLE_EQ(next.position.y, 0.0);
}

TEST(StepMobility, RejectsNonPositiveDt) {
  MobileUser mu;
  Rng rng(1);
  EXPECT_THROW(step_mobility(mu, 0.0, rng), std::invalid_argument);
}

TEST(StepMobility, RandomWaypointReplaysWithSameSeed) {
  MobileUser mu;
  mu.mobility_model = MobilityModel::RandomWaypoint;
  mu.waypoint_params = {{-50.0, -50.0}, {50.0, 50.0}, 3.0};

  auto trajectory = [&](std::uint64_t seed) {
    Rng rng = make_stream_rng(seed, 0);
    MobileUser m = mu;
    std::vector<Vec2> out;
    for (int i = 0; i < 500; ++i) {
      m = step_mobility(m, 0.5, rng);
      out.push_back(m.position);
    }
    return out;
  };
  const auto a = trajectory(42);
  EXPECT_EQ(a, trajectory(42));
  EXPECT_NE(a, trajectory(43));
}

TEST(StepMobility, RandomWaypointStaysInAreaAndMovesAtSpeed) {
  Rng rng(5);
  MobileUser mu;
  mu.mobility_model = MobilityModel::RandomWaypoint;
  mu.waypoint_params = {{0.0, 0.0}, {200.0, 100.0}, 4.0};
  mu.position = {100.0, 50.0};
  for (int i = 0; i < 2000; ++i) {
    const MobileUser next = step_mobility(mu, 0.25, rng);
    ASSERT_GE(next.position.x, 0.0);
    ASSERT_LE(next.position.x, 200.0);
    ASSERT_GE(next.position.y, 0.0);
    ASSERT_LE(next.position.y, 100.0);
    // Straight-line displacement never exceeds the path length.
    ASSERT_LE(distance(mu.position, next.position), 4.0 * 0.25 + 1e-9);
    mu = next;
  }
}

TEST(VisibleRats, InsideExactlyOneDisk) {
  RatDescriptor a = reference_rat();
  RatDescriptor b = reference_rat();
  b.id = 2;
  b.poa_position = {500.0, 0.0};
  const std::vector<RatDescriptor> w{b, a};
  const auto v = visible_rats({10.0, 0.0}, w);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].id, 1);
}

TEST(VisibleRats, InsideNoDisk) {
  const std::vector<RatDescriptor> w{reference_rat()};
  EXPECT_TRUE(visible_rats({1000.0, 0.0}, w).empty());
}

TEST(VisibleRats, BoundaryIsCovered) {
  const std::vector<RatDescriptor> w{reference_rat()};
  ASSERT_EQ(visible_rats({100.0, 0.0}, w).size(), 1u);
  EXPECT_TRUE(rss_at(w[0], {0.0, 100.0}));
}

TEST(VisibleRats, AgreesWithRssPresenceAndIsSorted) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const auto w = gen::world(rng, static_cast<int>(gen::integer(rng, 0, 8)));
    const Vec2 p = gen::point(rng, 1200.0);
    std::vector<RatId> expect;
    for (const auto& r : w) {
      if (rss_at(r, p)) expect.push_back(r.id);
    }
    std::vector<RatId> got;
    for (const auto& r : visible_rats(p, w)) got.push_back(r.id);
    ASSERT_EQ(got, expect) << "trial " << trial;
    ASSERT_TRUE(std::is_sorted(got.begin(), got.end()));
  }
}

TEST(Noise, ZeroSigmaLeavesGeneratorUntouched) {
  Rng a(3), b(3);
  const RatDescriptor r = reference_rat();
  EXPECT_EQ(rss_with_noise(r, {5.0, 0.0}, 0.0, a), rss_at(r, {5.0, 0.0}));
  EXPECT_EQ(a(), b());
}

TEST(Rng, StreamsAreDistinctAndReproducible) {
  Rng a = make_stream_rng(7, 0);
  Rng b = make_stream_rng(7, 1);
  Rng c = make_stream_rng(7, 0);
  const auto x = a();
  EXPECT_NE(x, b());
  EXPECT_EQ(x, c());
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(a);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
