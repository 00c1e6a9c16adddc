#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mink2d {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;     // one line, deterministic
  std::string artifacts;  // serialized CSV/JSON produced by the check, compared by criterion 6
  double seconds = 0.0;   // wall time; never part of the serialized output
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
  /// "PASS [k] name: detail" per criterion.
  std::string summary() const;
  /// Summary plus every artifact; what criterion 6 byte-compares.
  std::string serialized() const;
};

CriterionResult criterion_euclidean(std::uint64_t seed);
CriterionResult criterion_lp(std::uint64_t seed);
CriterionResult criterion_isometry(std::uint64_t seed);
CriterionResult criterion_degeneracy(std::uint64_t seed);
CriterionResult criterion_divergence(std::uint64_t seed);

/// Criteria 1-5, then criterion 6 reruns 1-5 and byte-compares the serialized
/// output. `progress` sees each criterion as soon as it finishes.
SuiteResult run_acceptance_suite(std::uint64_t seed, const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace mink2d
