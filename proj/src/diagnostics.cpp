#include "mink2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "mink2d/error.hpp"
#include "mink2d/parallel.hpp"
#include "mink2d/phase_shift.hpp"

namespace mink2d {

const char* to_string(LipschitzVerdict v) {
  switch (v) {
    case LipschitzVerdict::bounded:
      return "bounded";
    case LipschitzVerdict::diverging:
      return "diverging";
    case LipschitzVerdict::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

LipschitzVerdict classify_quotients(const std::vector<double>& q) {
  const std::size_t n = q.size();
  if (n < 3) return LipschitzVerdict::indeterminate;
  bool growing = n >= static_cast<std::size_t>(kDivergenceScales);
  for (std::size_t i = n - kDivergenceScales + 1; growing && i < n; ++i)
    growing = q[i] > q[i - 1] && q[i] >= kDivergenceFactor * q[i - 1];
  if (growing) return LipschitzVerdict::diverging;
  if (q[n - 1] <= kBoundedFactor * q[n - 2] && q[n - 2] <= kBoundedFactor * q[n - 3]) return LipschitzVerdict::bounded;
  return LipschitzVerdict::indeterminate;
}

bool quotients_vanish(const std::vector<double>& q) {
  const std::size_t n = q.size();
  if (n < 3) return false;
  return q[n - 1] * kDivergenceFactor <= q[n - 2] && q[n - 2] * kDivergenceFactor <= q[n - 3];
}

LipschitzScan lipschitz_scan(const NaturalParam& np, double s, int n_scales) {
  if (n_scales < 4) throw Error(ErrorCode::invalid_argument, "lipschitz_scan: n_scales must be >= 4");
  if (!std::isfinite(s)) throw Error(ErrorCode::invalid_argument, "lipschitz_scan: s must be finite");
  LipschitzScan scan;
  scan.s = s;
  double h = 1e-2 * np.half_length();
  for (int k = 0; k < n_scales; ++k, h *= 0.5) {
    scan.scales.push_back(h);
    scan.quotients.push_back(std::abs(phase(np, s + h) - phase(np, s - h)) / (2.0 * h));
  }
  scan.verdict = classify_quotients(scan.quotients);
  return scan;
}

int SmoothnessProxyReport::diverging_points() const {
  int n = 0;
  for (const auto& c : diverging_clusters) n += static_cast<int>(c.size());
  return n;
}

namespace {

// Runs of flagged grid indices, merged across the wrap-around.
std::vector<std::vector<double>> clusters_of(const std::vector<char>& flag, const std::vector<LipschitzScan>& scans) {
  const std::size_t n = flag.size();
  std::vector<std::vector<double>> out;
  std::size_t start = 0;
  while (start < n && flag[start]) ++start;
  if (start == n) {
    if (n == 0) return out;
    std::vector<double> all;
    for (const auto& sc : scans) all.push_back(sc.s);
    out.push_back(all);
    return out;
  }
  // Begin scanning just after an unflagged index so a wrapped run stays whole.
  std::vector<double> cur;
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t i = (start + step) % n;
    if (flag[i]) {
      cur.push_back(scans[i].s);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace

SmoothnessProxyReport absolute_smoothness_proxy(const NaturalParam& np, int grid_size, int n_scales) {
  if (grid_size < 1) throw Error(ErrorCode::invalid_argument, "absolute_smoothness_proxy: grid_size must be positive");
  SmoothnessProxyReport rep;
  rep.grid_size = grid_size;
  rep.n_scales = n_scales;
  rep.scans.resize(static_cast<std::size_t>(grid_size));
  parallel_for(rep.scans.size(), [&](std::size_t i) {
    rep.scans[i] = lipschitz_scan(np, np.period() * static_cast<double>(i) / grid_size, n_scales);
  });
  std::vector<char> div(rep.scans.size()), van(rep.scans.size()), ind(rep.scans.size());
  for (std::size_t i = 0; i < rep.scans.size(); ++i) {
    div[i] = rep.scans[i].verdict == LipschitzVerdict::diverging;
    van[i] = quotients_vanish(rep.scans[i].quotients);
    ind[i] = rep.scans[i].verdict == LipschitzVerdict::indeterminate;
    if (ind[i]) ++rep.indeterminate_points;
  }
  rep.diverging_clusters = clusters_of(div, rep.scans);
  rep.vanishing_clusters = clusters_of(van, rep.scans);
  rep.indeterminate_clusters = clusters_of(ind, rep.scans);
  const std::size_t limit = static_cast<std::size_t>(grid_size) / 100;
  bool isolated = rep.diverging_clusters.size() <= limit;
  for (const auto& c : rep.diverging_clusters) isolated = isolated && c.size() <= limit;
  rep.verdict = isolated ? "consistent with absolutely smooth" : "suspect";
  return rep;
}

}  // namespace mink2d
