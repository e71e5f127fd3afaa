#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic/partition.hpp"
#include "padic/rational_map.hpp"

namespace padic::checks {

struct CheckResult {
  int id = 0;
  std::string claim;
  std::string computed;
  std::string expected;
  bool pass = false;
  double seconds = 0;
};

struct CheckContext {
  RationalMap f;
  // Partition used by the symbolic checks; built on demand when absent.
  std::optional<PartitionModel> model;
  // Failure reason when the partition could not be built.
  std::string model_error;
  unsigned long seed = 20240607;
};

// Builds the partition model (when not supplied) without throwing.
CheckContext make_context(const RationalMap& f, std::optional<PartitionModel> model = std::nullopt);

// The twelve numbered checks of the worked example f(x) = 9/4 x (x - 1)^2
// over Q_2.  Each check catches its own exceptions and reports them as a
// failure.
std::vector<CheckResult> run_all(CheckContext& ctx);
CheckResult run_one(CheckContext& ctx, int id);
inline constexpr int kCheckCount = 12;

// Plain-text table: id, status, claim, computed, expected.
std::string format_table(const std::vector<CheckResult>& results);

}  // namespace padic::checks
