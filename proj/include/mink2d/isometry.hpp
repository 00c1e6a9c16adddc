#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mink2d/natural_param.hpp"

namespace mink2d {

/// f(r_X(s)) = r_Y(a s + b), a = +-1.
struct ParamMap {
  int a = 1;
  double b = 0.0;
  NaturalParamPtr source;
  NaturalParamPtr target;
};

/// Restriction of a linear map to the source sphere.
struct LinearSphereMap {
  LinearMap2 matrix;
};

/// Images of sphere points, ordered by source parameter; off-sample queries
/// use four-point interpolation in the source parameter, renormalized onto the
/// target sphere.
struct SampleMap {
  NaturalParamPtr source;
  std::vector<double> params;
  std::vector<Vec2> points;
  std::vector<Vec2> images;
};

using IsometryRepresentation = std::variant<ParamMap, LinearSphereMap, SampleMap>;

inline constexpr double kDefaultIsometryTolerance = 1e-7;

/// A map between unit spheres, candidate isometry. Immutable.
class SphereIsometry {
 public:
  static SphereIsometry param(NaturalParamPtr source, NaturalParamPtr target, int a, double b,
                              double tolerance = kDefaultIsometryTolerance);
  static SphereIsometry linear(NormSpacePtr source, NormSpacePtr target, LinearMap2 matrix,
                               double tolerance = kDefaultIsometryTolerance);
  /// Pairs (source point, image). Images must lie on the target sphere within 1e-8.
  static SphereIsometry samples(NaturalParamPtr source, NormSpacePtr target, std::span<const std::pair<Vec2, Vec2>> pairs,
                                double tolerance = kDefaultIsometryTolerance);
  /// Sample `fn` on the natural-parameter grid of `source`.
  static SphereIsometry tabulate(NaturalParamPtr source, NormSpacePtr target, const std::function<Vec2(Vec2)>& fn,
                                 double tolerance = kDefaultIsometryTolerance);

  Vec2 operator()(Vec2 x) const;

  const NormSpace& source() const { return *source_; }
  const NormSpace& target() const { return *target_; }
  const NormSpacePtr& source_ptr() const { return source_; }
  const NormSpacePtr& target_ptr() const { return target_; }
  double tolerance() const { return tolerance_; }
  const IsometryRepresentation& representation() const { return rep_; }

  /// Source points of a sample map; empty for the other representations.
  std::span<const Vec2> sample_points() const;

  /// Copy of a sample map with one image replaced (projected onto the target sphere).
  SphereIsometry with_sample_image(std::size_t index, Vec2 image) const;

 private:
  SphereIsometry(NormSpacePtr source, NormSpacePtr target, IsometryRepresentation rep, double tolerance);

  NormSpacePtr source_;
  NormSpacePtr target_;
  IsometryRepresentation rep_;
  double tolerance_;
};

/// Parse {"kind":"param",...} / {"kind":"linear",...} / {"kind":"samples","file":...}.
/// Sample files are CSV with header sx,sy,tx,ty, resolved against `base_dir`.
SphereIsometry parse_isometry_spec(std::string_view json_text, NaturalParamPtr source, NaturalParamPtr target,
                                   const std::filesystem::path& base_dir = {});

struct DistortionReport {
  double max_distortion = 0.0;
  Vec2 p, q;
};

/// max |‖f(p)-f(q)‖_Y - ‖p-q‖_X| over seeded random pairs of sphere points.
DistortionReport verify_isometry(const SphereIsometry& f, int n_pairs, std::uint64_t seed = 42);

struct AntipodalityReport {
  double max_residual = 0.0;
  Vec2 worst_point;
};

/// max ‖f(-x) + f(x)‖_Y over sphere samples (the sample points for sample maps).
AntipodalityReport antipodality_check(const SphereIsometry& f, int n_points);

struct ParamLineFit {
  int a = 1;
  double b = 0.0;
  double residual = 0.0;
};

/// Fit f o r_X = r_Y o (a s + b); b in [0, 2L_Y).
ParamLineFit recover_param_line_isometry(const SphereIsometry& f, const NaturalParam& np_x, const NaturalParam& np_y);

/// The linear map agreeing with f at two independent anchors.
LinearMap2 reconstruct_linear_extension(const SphereIsometry& f, Vec2 p1, Vec2 p2);

struct ExtensionCheck {
  double max_error = 0.0;  // max ‖T x - f(x)‖_Y over sphere samples
  Vec2 worst_point;
  double norm_distortion = 0.0;  // max |‖T v‖_Y - ‖v‖_X| over random probes
};

ExtensionCheck verify_extension(const LinearMap2& t, const SphereIsometry& f, int n_points, std::uint64_t seed = 42);

/// Anchor pair r(0), r(s*) with s* maximizing |det(r(0), r(s))| over the grid.
std::pair<double, double> anchor_parameters(const NaturalParam& np);

struct MazurUlamOptions {
  int grid_size = 1024;
  int n_pairs = 2000;
  int n_points = 1024;
  int n_chords = 64;
  std::uint64_t seed = 42;
};

struct WitnessSummary {
  double s = 0.0;
  Vec2 direction;
  double max_residual = 0.0;
  double worst_a = 0.0;
  double worst_b = 0.0;
  int chords = 0;
};

struct MazurUlamReport {
  bool pass = false;
  double tolerance = 0.0;
  double distortion = 0.0;
  double antipodality = 0.0;
  std::optional<ParamLineFit> fit;
  LinearMap2 extension;
  double anchor_s1 = 0.0;
  double anchor_s2 = 0.0;
  double extension_error = 0.0;
  double extension_norm_distortion = 0.0;
  std::vector<WitnessSummary> witnesses;
  std::vector<std::string> failures;
};

/// Antipodality, parameter-line fit, linear extension and special-direction
/// witnesses for f : S_X -> S_Y. Sub-check failures are recorded, not thrown.
MazurUlamReport mazur_ulam_check(const NormSpace& space, const SphereIsometry& f, const MazurUlamOptions& opts = {});

std::string to_json(const MazurUlamReport& report, int indent = 2);

}  // namespace mink2d
