#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace trivconj;
using testing_support::nb;
using testing_support::pairing;
using testing_support::sigma;
using testing_support::sigma_inv;

namespace {

const NearBijection evens_up_odds_down = nb("nearbij { except { 0 -> 2; 1 -> !; } tail from 2 mod 2 { 0: +2; 1: -2 } }");
const NearBijection two_by_two =
    nb("nearbij { except { 0 -> 4; 1 -> !; 2 -> 6; 3 -> !; } tail from 4 mod 4 { 0: +4; 1: -4; 2: +4; 3: -4 } }");

void expect_matches_brute(const NearBijection& f) {
  auto c = orbit_census(f);
  Int w = testing_support::far_window(f);
  auto b = testing_support::brute_census(f, w, 4 * w);
  EXPECT_EQ(c.z_orbits, b.z_orbits) << to_dsl(f);
  EXPECT_EQ(c.fwd_rays, b.fwd) << to_dsl(f);
  EXPECT_EQ(c.bwd_rays, b.bwd) << to_dsl(f);
  EXPECT_EQ(c.finite_paths, b.paths) << to_dsl(f);
  // Lengths with infinitely many cycles keep appearing far out; the others
  // are exhausted inside the window.
  for (const auto& [len, n] : b.cycles) {
    if (c.omega_lengths.contains(len)) continue;
    auto it = c.finite_cycles.find(len);
    ASSERT_NE(it, c.finite_cycles.end()) << len << " in " << to_dsl(f);
    EXPECT_EQ(it->second, n) << to_dsl(f);
  }
  for (const auto& [len, n] : c.finite_cycles) EXPECT_EQ(b.cycles[len], n) << to_dsl(f);
  auto far = testing_support::brute_census(f, 8 * w, 16 * w);
  for (Int len = 1; len <= 64; ++len) {
    bool grows = far.cycles[len] > b.cycles[len];
    EXPECT_EQ(grows, c.omega_lengths.contains(len)) << len << " in " << to_dsl(f);
  }
}

}  // namespace

TEST(OrbitCensus, ForwardShiftIsOneRay) {
  auto c = orbit_census(sigma);
  EXPECT_EQ(c.fwd_rays, 1);
  EXPECT_EQ(c.bwd_rays, 0);
  EXPECT_EQ(c.z_orbits, 0);
  EXPECT_TRUE(c.finite_cycles.empty());
  EXPECT_TRUE(c.omega_lengths.is_empty());
  EXPECT_EQ(c.fwd_ray_starts, std::vector<Int>{0});
}

TEST(OrbitCensus, Pairing) {
  auto c = orbit_census(pairing);
  EXPECT_EQ(c.omega_lengths, SetSpec::finite({2}));
  EXPECT_EQ(c.end_count(), 0);
  EXPECT_TRUE(c.finite_cycles.empty());
}

TEST(OrbitCensus, OneTranspositionOnIdentity) {
  auto c = orbit_census(nb("nearbij { except { 0 -> 1; 1 -> 0; } tail from 2 mod 1 { 0: +0 } }"));
  EXPECT_EQ(c.finite_cycles, (std::map<Int, Int>{{2, 1}}));
  EXPECT_EQ(c.omega_lengths, SetSpec::finite({1}));
}

TEST(OrbitCensus, RayCountsAreComplementSizes) {
  std::mt19937_64 rng(testing_support::seed());
  for (int i = 0; i < 300; ++i) {
    auto f = random_near_bijection(rng);
    auto c = orbit_census(f);
    EXPECT_EQ(c.fwd_rays + c.finite_paths, static_cast<Int>(f.range_complement().size()));
    EXPECT_EQ(c.bwd_rays + c.finite_paths, static_cast<Int>(f.domain_complement().size()));
    EXPECT_EQ(c.h(), h_index(f));
  }
}

TEST(OrbitCensus, MatchesWindowSimulation) {
  std::mt19937_64 rng(testing_support::seed() + 1);
  for (int i = 0; i < 200; ++i) expect_matches_brute(random_near_bijection(rng));
  expect_matches_brute(evens_up_odds_down);
  expect_matches_brute(two_by_two);
  expect_matches_brute(sigma_inv);
}

TEST(OrbitCensus, WindowCensusOfCompleteCycles) {
  auto c = window(pairing, 10).census();
  EXPECT_EQ(c.cycles, (std::map<Int, Int>{{2, 5}}));
}

TEST(OrbitCensus, EndCountSurvivesModification) {
  std::mt19937_64 rng(testing_support::seed() + 2);
  for (int i = 0; i < 200; ++i) {
    auto f = random_near_bijection(rng);
    auto g = random_finite_modification(f, rng(), 5);
    ASSERT_TRUE(equal_mod_finite(f, g).equal);
    EXPECT_EQ(orbit_census(f).end_count(), orbit_census(g).end_count()) << to_dsl(f) << " / " << to_dsl(g);
  }
}

TEST(Splice, EvensUpOddsDown) {
  auto before = orbit_census(evens_up_odds_down);
  EXPECT_EQ(before.fwd_rays, 1);
  EXPECT_EQ(before.bwd_rays, 1);
  auto g = splice(evens_up_odds_down);
  EXPECT_EQ(g.apply(1), 0);
  auto c = orbit_census(g);
  EXPECT_EQ(c.z_orbits, 1);
  EXPECT_EQ(c.fwd_rays, 0);
  EXPECT_EQ(c.bwd_rays, 0);
  EXPECT_TRUE(equal_mod_finite(g, evens_up_odds_down).equal);
  EXPECT_EQ(c.end_count(), before.end_count());
}

TEST(Splice, ForwardShiftHasNoPair) { EXPECT_THROW(splice(sigma), NoRayPair); }

TEST(Splice, TwiceOnTwoPairs) {
  auto c0 = orbit_census(two_by_two);
  ASSERT_EQ(c0.fwd_rays, 2);
  ASSERT_EQ(c0.bwd_rays, 2);
  auto g = splice(splice(two_by_two));
  auto c = orbit_census(g);
  EXPECT_EQ(c.z_orbits, 2);
  EXPECT_EQ(c.fwd_rays, 0);
  EXPECT_EQ(c.bwd_rays, 0);
  EXPECT_EQ(h_index(g), h_index(two_by_two));
  Int w = testing_support::far_window(g);
  auto b = testing_support::brute_census(g, w, 4 * w);
  EXPECT_EQ(b.z_orbits, 2);
  EXPECT_EQ(b.fwd + b.bwd + b.paths, 0);
}

TEST(Splice, RandomPreservesInvariants) {
  std::mt19937_64 rng(testing_support::seed() + 3);
  int done = 0;
  for (int i = 0; i < 400 && done < 100; ++i) {
    auto f = random_near_bijection(rng);
    auto c = orbit_census(f);
    if (c.fwd_rays == 0 || c.bwd_rays == 0) continue;
    ++done;
    auto g = splice(f);
    auto d = orbit_census(g);
    EXPECT_TRUE(equal_mod_finite(f, g).equal);
    EXPECT_EQ(d.z_orbits, c.z_orbits + 1);
    EXPECT_EQ(d.fwd_rays, c.fwd_rays - 1);
    EXPECT_EQ(d.bwd_rays, c.bwd_rays - 1);
    EXPECT_EQ(d.end_count(), c.end_count());
    EXPECT_EQ(h_index(g), h_index(f));
  }
  EXPECT_GT(done, 20);
}
