#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace tracelab {

// Seed used when the caller does not supply one (and TRACELAB_SEED is unset).
inline constexpr std::uint64_t DEFAULT_SEED = 123456789ull;

// TRACELAB_SEED environment variable, or DEFAULT_SEED when unset/invalid
std::uint64_t seed_from_env();

// One measured quantity inside a criterion.
struct SubCheck {
  std::string label;
  std::string measured;  // formatted value; "yes"/"NO" for boolean checks
  std::string want;      // bound description; empty for informational notes
  bool pass = true;
};

// Outcome of one acceptance criterion.
struct CriterionResult {
  int index = 0;         // 1-based criterion number
  std::string name;      // short slug, stable across runs
  bool pass = false;
  std::string detail;    // measured values; failing sub-checks carry "(want ...)"
  std::vector<SubCheck> checks;
  double seconds = 0.0;  // wall time for this criterion
};

struct VerifyOptions {
  bool quick = false;     // smaller grids/lattices, slightly wider tolerances
  unsigned workers = 1;   // worker threads for the heavy measure builds
  std::uint64_t seed = DEFAULT_SEED;
};

// Runs the full acceptance suite in order.  When `progress` is non-null a
// one-line [PASS]/[FAIL] report is streamed per criterion as it finishes.
// Criteria that throw are reported as failures, not propagated.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt,
                                            std::ostream* progress = nullptr);

}  // namespace tracelab
