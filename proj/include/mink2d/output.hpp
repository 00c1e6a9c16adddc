#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mink2d/diagnostics.hpp"
#include "mink2d/distance_expansion.hpp"
#include "mink2d/phase_shift.hpp"

namespace mink2d {

/// 12 significant digits, "C" formatting.
std::string fmt12(double v);

/// '#'-prefixed key: value lines carried by every emitted file.
struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;

  Metadata& add(std::string key, std::string value);
  Metadata& add(std::string key, double value);
  std::string render(const char* prefix = "# ") const;
};

/// Label, grid, half-length, build tolerance and orientation convention.
Metadata base_metadata(const NaturalParam& np);

std::string samples_csv(const NaturalParam& np);
std::string phase_csv(const PhaseProfile& profile);
std::string expansion_csv(const NaturalParam& np, double s, const std::vector<ExpansionReport>& rows);
std::string lipschitz_csv(const NaturalParam& np, const std::vector<LipschitzScan>& scans);
std::string proxy_summary(const SmoothnessProxyReport& report);

/// Sphere outline with tangent glyphs at every `stride`-th sample.
std::string sphere_svg(const NaturalParam& np, int glyphs = 32);
/// Graph of phi(s) - s.
std::string phase_svg(const PhaseProfile& profile);

/// Writes bytes verbatim (LF line endings); throws io errors.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mink2d
