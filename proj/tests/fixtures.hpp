#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "mink2d/natural_param.hpp"

namespace fixtures {

inline constexpr double kPi = std::numbers::pi;

inline mink2d::NormSpacePtr euclidean() {
  static auto sp = mink2d::NormSpace::build(mink2d::euclidean_spec());
  return sp;
}

inline mink2d::NormSpacePtr lp(double p) {
  static std::map<double, mink2d::NormSpacePtr> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = mink2d::NormSpace::build(mink2d::lp_spec(p));
  return slot;
}

// Natural parameterizations are shared across test cases; building is the
// dominant cost of most checks.
inline mink2d::NaturalParamPtr param(const mink2d::NormSpacePtr& sp, int grid = 1024) {
  static std::map<std::pair<const mink2d::NormSpace*, int>, mink2d::NaturalParamPtr> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto& slot = cache[{sp.get(), grid}];
  if (!slot) slot = mink2d::NaturalParam::build(sp, grid);
  return slot;
}

inline mink2d::NaturalParamPtr euclidean_param(int grid = 1024) { return param(euclidean(), grid); }
inline mink2d::NaturalParamPtr lp_param(double p, int grid = 1024) { return param(lp(p), grid); }

inline double dist(mink2d::Vec2 a, mink2d::Vec2 b) { return mink2d::euclidean_length(a - b); }

}  // namespace fixtures
