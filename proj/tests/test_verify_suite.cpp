#include "numscale/verify.hpp"

#include <gtest/gtest.h>

// The named property suites double as the library's invariant tests; every
// one of them must pass with the default seed.
TEST(VerifySuite, AllChecksPass) {
  auto results = numscale::verify::run_all(42);
  EXPECT_EQ(results.size(), numscale::verify::registry().size());
  for (const auto& r : results) {
    EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
  }
}

TEST(VerifySuite, SeedChangesAreStillGreen) {
  for (std::uint64_t seed : {7ULL, 20260810ULL}) {
    for (const auto& r : numscale::verify::run_all(seed)) {
      EXPECT_TRUE(r.pass) << "seed " << seed << ": " << r.name << ": " << r.detail;
    }
  }
}
