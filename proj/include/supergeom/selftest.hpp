#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sg {

struct SelftestResult {
  std::string name;
  unsigned passed = 0;
  unsigned total = 0;
  /// Description of the first failing case, if any.
  std::string first_failure;
};

/// Randomized identity checks: ber-mult, ber-formulas, ber-tr, trace,
/// pullback, bracket, commutator, json.
const std::vector<std::string>& selftest_names();

/// Throws Invalid for an unknown name.
SelftestResult run_selftest(const std::string& name, unsigned count, std::uint64_t seed);

}  // namespace sg
