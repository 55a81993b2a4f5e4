#pragma once

// Randomized identity batteries over every module. Each battery reports its
// worst residual against a fixed tolerance.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qinvar/invariants.hpp"

namespace qinvar {

struct SelftestOptions {
  std::uint64_t seed = 42;
  std::size_t count = 10000;
  double eps_k = kDefaultEpsK;
};

struct IdentityResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed() const { return worst <= tolerance; }
};

/// Battery i draws from make_stream(seed, i), so results are a pure function
/// of the options.
std::vector<IdentityResult> run_selftest(const SelftestOptions& opts);

}  // namespace qinvar
