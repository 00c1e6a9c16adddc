#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mink2d/norm.hpp"

namespace mink2d {

class SphereIsometry;

/// Unit self-speed parameterization r of the unit sphere, tabulated on a
/// uniform grid over one period [0, 2L).
///
/// Two backings exist. A chart-backed parameterization (from `build`) keeps the
/// angular chart t -> boundary_point(t) and its cumulative self-arclength, so
/// off-grid evaluation interpolates t(s) with a cubic Hermite and then polishes
/// it against the arclength integral; points are on the sphere to rounding.
/// A table-backed parameterization (from `pushforward_param`) only has the
/// sample table and uses cubic Hermite interpolation of it.
///
/// Orientation is counterclockwise and r(0) = boundary_point(0).
class NaturalParam {
 public:
  struct Sample {
    double s = 0.0;
    double t = 0.0;  // chart angle; unused for table-backed parameterizations
    Vec2 point;
    Vec2 tangent;
  };

  static constexpr int kMinGridSize = 256;
  static constexpr double kDefaultTolerance = 1e-12;

  static std::shared_ptr<const NaturalParam> build(NormSpacePtr space, int grid_size, double tol = kDefaultTolerance);
  static std::shared_ptr<const NaturalParam> from_table(NormSpacePtr space, double half_length,
                                                        std::vector<Sample> samples);

  double half_length() const { return half_length_; }
  double period() const { return 2.0 * half_length_; }
  int grid_size() const { return static_cast<int>(samples_.size()); }
  double grid_step() const { return period() / grid_size(); }
  double build_tolerance() const { return tolerance_; }
  bool chart_backed() const { return !knot_t_.empty(); }

  Vec2 r(double s) const;
  Vec2 r_prime(double s) const;
  /// r'' by central differences of r' with one Richardson step; default step 1e-4 L.
  Vec2 r_second(double s, double step = 0.0) const;

  /// Reduce s into [0, 2L).
  double reduce(double s) const;

  /// Parameter in [0, 2L) of a point of the sphere (located by its polar angle).
  double parameter_of(Vec2 point) const;

  /// Self-arclength from angle 0 to angle t in [0, 2pi]. Chart-backed only.
  double arclength_at_angle(double t) const;

  /// Chart angle t(s) in [0, 2pi). Chart-backed only.
  double chart_angle(double s) const;

  /// Parameters of the space's singular angles (sorted).
  std::vector<double> singular_parameters() const;

  std::span<const Sample> samples() const { return samples_; }
  const NormSpace& space() const { return *space_; }
  const NormSpacePtr& space_ptr() const { return space_; }

 private:
  NaturalParam() = default;

  double quad_speed(double a, double b) const;
  double angle_at(double s) const;

  NormSpacePtr space_;
  double half_length_ = 0.0;
  double tolerance_ = kDefaultTolerance;
  std::vector<Sample> samples_;
  std::vector<double> sample_speed_;  // chart speed at sample angles
  std::vector<double> knot_t_;        // uniform chart knots over [0, 2pi]
  std::vector<double> knot_s_;        // cumulative self-arclength at the knots
  std::vector<Vec2> tangent_slope_;   // table-backed: d tangent / ds estimates
};

using NaturalParamPtr = std::shared_ptr<const NaturalParam>;

/// Tabulate f o r_X with finite-difference tangents and check unit self-speed
/// in the target norm (max deviation 1e-6).
NaturalParamPtr pushforward_param(const NaturalParam& np_x, const SphereIsometry& f);

}  // namespace mink2d
