#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace trivconj;
using testing_support::nb;
using testing_support::pairing;
using testing_support::sigma;
using testing_support::sigma_inv;

namespace {

NearBijection identity() { return NearBijection(); }

// Brute-force f o g and f^-1 checked pointwise on a window.
void expect_pointwise(const NearBijection& f, const NearBijection& g, const NearBijection& fg, Int w) {
  for (Int n = 0; n < w; ++n) {
    auto gn = g.apply(n);
    std::optional<Int> expect = gn ? f.apply(*gn) : std::nullopt;
    ASSERT_EQ(fg.apply(n), expect) << n << " in " << to_dsl(fg);
  }
}

}  // namespace

TEST(NearBijectionValidate, ResidueCollision) {
  NearBijectionDraft d;
  d.threshold = 10;
  d.modulus = 2;
  d.shifts = {2, -1};
  try {
    NearBijection::validate(d);
    FAIL();
  } catch (const InvalidResiduePermutation& e) {
    EXPECT_EQ(e.first, 0);
    EXPECT_EQ(e.second, 1);
  }
}

TEST(NearBijectionValidate, ForwardShiftIsValid) {
  EXPECT_EQ(sigma.apply(7), 8);
  EXPECT_EQ(sigma.modulus(), 1);
  EXPECT_EQ(sigma.threshold(), 0);
}

TEST(NearBijectionValidate, InjectivityViolation) {
  NearBijectionDraft d;
  d.threshold = 3;
  d.exceptions = {{0, 1}, {2, 1}};
  try {
    NearBijection::validate(d);
    FAIL();
  } catch (const InjectivityViolation& e) {
    EXPECT_EQ(e.first, 0);
    EXPECT_EQ(e.second, 2);
  }
}

TEST(NearBijectionValidate, TableCollidesWithTail) {
  NearBijectionDraft d;
  d.threshold = 2;
  d.shifts = {1};
  d.exceptions = {{0, 5}, {1, 0}};
  EXPECT_THROW(NearBijection::validate(d), InjectivityViolation);
}

TEST(NearBijectionValidate, NegativeImage) {
  NearBijectionDraft d;
  d.threshold = 0;
  d.shifts = {-1};
  try {
    NearBijection::validate(d);
    FAIL();
  } catch (const NegativeImage& e) {
    EXPECT_EQ(e.point, 0);
  }
}

TEST(NearBijectionValidate, NormalFormReducesModulusAndThreshold) {
  auto f = nb("nearbij { except { 0 -> 1; 1 -> 2; } tail from 2 mod 2 { 0: +1; 1: +1 } }");
  EXPECT_EQ(f, sigma);
  EXPECT_EQ(to_dsl(f), "nearbij { tail from 0 mod 1 { 0: +1 } }");
}

TEST(NearBijectionApply, Examples) {
  EXPECT_EQ(sigma.apply(7), 8);
  EXPECT_EQ(sigma_inv.apply(0), std::nullopt);
  EXPECT_EQ(pairing.apply(6), 7);
  EXPECT_EQ(pairing.apply(7), 6);
}

TEST(NearBijectionCompose, ShiftThenInverse) {
  auto f = compose(sigma, sigma_inv);
  EXPECT_EQ(f.apply(0), std::nullopt);
  for (Int n = 1; n < 100; ++n) EXPECT_EQ(f.apply(n), n);
  EXPECT_TRUE(equal_mod_finite(f, identity()).equal);
  EXPECT_EQ(equal_mod_finite(f, identity()).differences, std::vector<Int>{0});
}

TEST(NearBijectionCompose, DoubleShift) {
  auto f = compose(sigma, sigma);
  EXPECT_EQ(f, NearBijection::shift(2));
  EXPECT_EQ(h_index(f), 2);
  EXPECT_EQ(f.range_complement(), (std::vector<Int>{0, 1}));
}

TEST(NearBijectionCompose, PairingIsAnInvolution) { EXPECT_EQ(compose(pairing, pairing), identity()); }

TEST(NearBijectionCompose, RandomPairsPointwise) {
  std::mt19937_64 rng(testing_support::seed());
  for (int i = 0; i < 300; ++i) {
    auto f = random_near_bijection(rng), g = random_near_bijection(rng);
    auto fg = compose(f, g);
    expect_pointwise(f, g, fg, 200);
  }
}

TEST(NearBijectionInvert, Examples) {
  EXPECT_TRUE(equal_mod_finite(invert(sigma), sigma_inv).equal);
  EXPECT_EQ(invert(pairing), pairing);
  auto f = invert(NearBijection::shift(2));
  EXPECT_EQ(f.apply(1), std::nullopt);
  EXPECT_EQ(f.apply(2), 0);
  EXPECT_EQ(h_index(f), -2);
}

TEST(NearBijectionInvert, RandomRoundTrip) {
  std::mt19937_64 rng(testing_support::seed() + 1);
  for (int i = 0; i < 300; ++i) {
    auto f = random_near_bijection(rng);
    auto g = invert(f);
    for (Int n = 0; n < 200; ++n) {
      if (auto v = f.apply(n)) {
        ASSERT_EQ(g.apply(*v), n);
      }
      if (auto v = g.apply(n)) {
        ASSERT_EQ(f.apply(*v), n);
      }
    }
    EXPECT_EQ(h_index(g), -h_index(f));
    EXPECT_EQ(invert(g), f);
  }
}

TEST(NearBijectionModFinite, FinitePerturbation) {
  auto g = nb("nearbij { except { 0 -> 5; 4 -> 1; 1 -> 2; 2 -> 3; 3 -> 4; 5 -> 6; } tail from 6 mod 1 { 0: +1 } }");
  auto r = equal_mod_finite(sigma, g);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.differences, (std::vector<Int>{0, 4}));
}

TEST(NearBijectionModFinite, ShiftsDisagreeEverywhere) {
  auto r = equal_mod_finite(sigma, sigma_inv);
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.witness_rule(), "all n >= 1");
}

TEST(NearBijectionModFinite, SelfIsEqualWithNoDifferences) {
  auto r = equal_mod_finite(pairing, pairing);
  EXPECT_TRUE(r.equal);
  EXPECT_TRUE(r.differences.empty());
}

TEST(NearBijectionModFinite, AgreesWithScan) {
  std::mt19937_64 rng(testing_support::seed() + 2);
  for (int i = 0; i < 300; ++i) {
    auto f = random_near_bijection(rng);
    auto g = i % 2 ? random_finite_modification(f, rng(), 4) : random_near_bijection(rng);
    auto r = equal_mod_finite(f, g);
    std::vector<Int> diffs;
    for (Int n = 0; n < 400; ++n)
      if (f.apply(n) != g.apply(n)) diffs.push_back(n);
    bool late = false;
    for (Int n = 200; n < 400; ++n) late = late || f.apply(n) != g.apply(n);
    EXPECT_EQ(r.equal, !late);
    if (r.equal) {
      EXPECT_EQ(r.differences, diffs);
    } else {
      Int n = r.witness_from + floor_mod(r.witness_residue - r.witness_from, r.witness_modulus);
      for (int k = 0; k < 20; ++k, n += r.witness_modulus) EXPECT_NE(f.apply(n), g.apply(n));
    }
  }
}

TEST(NearBijectionIndex, Examples) {
  EXPECT_EQ(h_index(sigma), 1);
  EXPECT_EQ(h_index(sigma_inv), -1);
  EXPECT_EQ(h_index(identity()), 0);
  EXPECT_EQ(h_index(pairing), 0);
}

TEST(NearBijectionIndex, MatchesComplementScan) {
  std::mt19937_64 rng(testing_support::seed() + 3);
  for (int i = 0; i < 500; ++i) {
    auto f = random_near_bijection(rng);
    Int w = testing_support::far_window(f);
    EXPECT_EQ(h_index(f), testing_support::scan_h(f, w, 3 * w)) << to_dsl(f);
  }
}

TEST(NearBijectionIndex, Homomorphism) {
  std::mt19937_64 rng(testing_support::seed() + 4);
  for (int i = 0; i < 500; ++i) {
    auto f = random_near_bijection(rng), g = random_near_bijection(rng);
    auto fg = compose(f, g);
    Int w = testing_support::far_window(fg) + testing_support::far_window(g);
    Int scanned = testing_support::scan_h(fg, w, 3 * w);
    EXPECT_EQ(scanned, testing_support::scan_h(f, w, 3 * w) + testing_support::scan_h(g, w, 3 * w));
    EXPECT_EQ(h_index(fg), h_index(f) + h_index(g));
    EXPECT_EQ(h_index(fg), scanned);
  }
}

TEST(NearBijectionIndex, ConjugationInvariant) {
  std::mt19937_64 rng(testing_support::seed() + 5);
  for (int i = 0; i < 200; ++i) {
    auto f = random_near_bijection(rng), t = random_near_bijection(rng);
    EXPECT_EQ(h_index(compose(compose(invert(t), f), t)), h_index(f));
  }
}

TEST(NearBijectionIndex, TotalBijectionsHaveZero) {
  std::mt19937_64 rng(testing_support::seed() + 6);
  for (int i = 0; i < 200; ++i) {
    auto f = random_near_bijection(rng);
    if (f.domain_complement().empty() && f.range_complement().empty()) {
      EXPECT_EQ(h_index(f), 0);
    }
  }
  EXPECT_EQ(h_index(embed(std::vector<Int>{2, 0, 1})), 0);
}

TEST(NearBijectionVerify, Examples) {
  EXPECT_TRUE(verify_conjugation(pairing, pairing, identity()).equal);
  EXPECT_TRUE(verify_conjugation(sigma, sigma, sigma).equal);
}

TEST(NearBijectionVerify, ShiftsNeverConjugate) {
  std::mt19937_64 rng(testing_support::seed() + 7);
  for (int i = 0; i < 200; ++i) {
    auto tau = random_near_bijection(rng);
    EXPECT_FALSE(verify_conjugation(sigma, sigma_inv, tau).equal) << to_dsl(tau);
  }
}

TEST(NearBijectionDsl, RoundTrip) {
  std::mt19937_64 rng(testing_support::seed() + 8);
  for (int i = 0; i < 300; ++i) {
    auto f = random_near_bijection(rng);
    EXPECT_EQ(nb(to_dsl(f)), f);
  }
}
