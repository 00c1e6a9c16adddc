#pragma once

#include <string>
#include <vector>

#include "mink2d/natural_param.hpp"

namespace mink2d {

enum class LipschitzVerdict { bounded, diverging, indeterminate };

const char* to_string(LipschitzVerdict v);

/// Verdict thresholds. Finite scales can only display growth, never prove
/// non-Lipschitzness, so "diverging" is deliberately hard to reach.
inline constexpr double kDivergenceFactor = 1.5;  // per dyadic halving
inline constexpr int kDivergenceScales = 3;       // trailing quotients that must grow
inline constexpr double kBoundedFactor = 1.1;     // trailing ratios at most this

struct LipschitzScan {
  double s = 0.0;
  std::vector<double> scales;     // h_k = 1e-2 L 2^-k, descending
  std::vector<double> quotients;  // |phi(s+h) - phi(s-h)| / 2h
  LipschitzVerdict verdict = LipschitzVerdict::indeterminate;
};

/// diverging: the last kDivergenceScales quotients strictly increase, each by
/// >= kDivergenceFactor. bounded: the last two ratios are <= kBoundedFactor.
LipschitzVerdict classify_quotients(const std::vector<double>& quotients);

/// True when the last two ratios are <= 1 / kDivergenceFactor (phi' -> 0,
/// second-order flat sphere).
bool quotients_vanish(const std::vector<double>& quotients);

LipschitzScan lipschitz_scan(const NaturalParam& np, double s, int n_scales);

struct SmoothnessProxyReport {
  int grid_size = 0;
  int n_scales = 0;
  std::vector<LipschitzScan> scans;
  std::vector<std::vector<double>> diverging_clusters;  // cyclically consecutive grid runs
  std::vector<std::vector<double>> vanishing_clusters;
  std::vector<std::vector<double>> indeterminate_clusters;
  int indeterminate_points = 0;
  std::string verdict;  // "consistent with absolutely smooth" | "suspect"

  int diverging_points() const;
};

inline constexpr const char* kProxyDisclaimer =
    "finite-scale heuristic: quotients at dyadic scales display growth, they cannot certify absolute smoothness";

/// lipschitz_scan over a uniform grid. Consistent when every diverging cluster
/// and the number of clusters stay <= grid_size / 100.
SmoothnessProxyReport absolute_smoothness_proxy(const NaturalParam& np, int grid_size, int n_scales = 8);

}  // namespace mink2d
