#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nhqfi {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 200;
  std::optional<double> tolerance;  // replaces every check's tolerance
  std::set<std::string> skip;
  unsigned threads = 0;
};

struct CheckResult {
  std::string name;
  std::string description;
  double tolerance = 0.0;
  double max_error = 0.0;
  int samples = 0;
  int failures = 0;
  std::string worst_draw;  // parameters of the largest error
  bool skipped = false;
  bool passed() const { return skipped || failures == 0; }
};

// Names of every check, in run order.
std::vector<std::string> verification_checks();

// Runs the cross-check suite. Each check draws `samples` parameter sets
// (at least one) from its own mt19937_64 stream seeded from `seed` and the
// check's index, so results do not depend on the thread count or on which
// checks are skipped. Unknown names in `skip` throw InvalidArgument.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace nhqfi
