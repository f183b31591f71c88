#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace clearance {

struct CheckConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  // Replace the indexed segment answer with one that ignores the slab term,
  // to confirm the harness notices a broken structure.
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

/// Randomized comparisons of every query structure against linear scans and
/// the brute-force clearance. Deterministic for a fixed seed.
std::vector<SuiteResult> run_checks(const CheckConfig& config);

}  // namespace clearance
