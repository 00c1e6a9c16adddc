#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mink2d/vec2.hpp"

namespace mink2d {

// Norm families. Every family describes a centrally symmetric convex body
// whose gauge is the norm.

struct Euclidean {};

/// (|x|^p + |y|^p)^(1/p), 1 < p < inf.
struct Lp {
  double p = 2.0;
};

/// Centrally symmetric convex polygon, vertices counterclockwise.
struct Polygon {
  std::vector<Vec2> vertices;
};

/// Radial function rho(t) = 1 + sum_k c_k cos(2 k t), k = 1..n; gauge |v| / rho(arg v).
struct TrigPerturbedCircle {
  std::vector<double> coeffs;
};

/// Arbitrary gauge supplied by the caller. Must be a symmetric norm; only the
/// numerical classification guards against misuse.
struct CustomGauge {
  std::function<double(Vec2)> gauge;
  std::string description;
};

using NormFamily = std::variant<Euclidean, Lp, Polygon, TrigPerturbedCircle, CustomGauge>;

struct NormSpec {
  NormFamily family;
  std::string label;
};

NormSpec euclidean_spec(std::string label = "euclidean");
NormSpec lp_spec(double p, std::string label = {});
/// Regular 2n-gon with a vertex at (1, 0).
NormSpec regular_polygon_spec(int vertex_count, std::string label = {});

/// Parse the JSON norm-spec document. Unknown fields are rejected.
NormSpec parse_norm_spec(std::string_view json_text);
/// Inverse of parse_norm_spec for the serializable families.
std::string norm_spec_to_json(const NormSpec& spec);

enum class Tristate { no, yes, indeterminate };

const char* to_string(Tristate t);

/// Numerical smoothness / strict-convexity proxies. Angles point at the first
/// offending sample (or the located corner) when the flag is not `yes`.
struct Classification {
  Tristate smooth = Tristate::indeterminate;
  Tristate strictly_convex = Tristate::indeterminate;
  std::optional<double> smooth_angle;
  std::optional<double> convexity_angle;
  int resolution = 0;
};

enum class Side { left, right, central };

inline constexpr int kDefaultClassificationResolution = 2048;
inline constexpr double kClassificationTolerance = 1e-7;

class NormSpace;

/// Classification of a (possibly partially constructed) space.
Classification classify(const NormSpace& space, int resolution);

/// A planar norm with cached classification. Immutable after construction.
class NormSpace {
 public:
  static std::shared_ptr<const NormSpace> build(NormSpec spec,
                                                int classification_resolution = kDefaultClassificationResolution);

  double eval(Vec2 v) const;

  /// Point of the unit sphere in direction `angle`; the polar angle of the
  /// result equals `angle`.
  Vec2 boundary_point(double angle) const;

  /// Derivative d/dt of boundary_point(t). One-sided values differ only at corners.
  Vec2 chart_derivative(double angle, Side side = Side::central) const;

  /// Self-speed of the angular chart, eval(chart_derivative(angle)).
  double chart_speed(double angle) const { return eval(chart_derivative(angle)); }

  /// Angles in [0, 2pi) where the boundary loses regularity (lp axis points,
  /// polygon vertices). Empty for euclidean and trig families.
  const std::vector<double>& singular_angles() const { return singular_angles_; }

  bool has_analytic_chart() const;

  const Classification& classification() const { return classification_; }
  bool is_smooth() const { return classification_.smooth == Tristate::yes; }
  bool is_strictly_convex() const { return classification_.strictly_convex == Tristate::yes; }

  const NormSpec& spec() const { return spec_; }
  const std::string& label() const { return spec_.label; }
  int classification_resolution() const { return classification_.resolution; }

 private:
  explicit NormSpace(NormSpec spec);
  void validate(int resolution);

  NormSpec spec_;
  Classification classification_;
  std::vector<double> singular_angles_;
  // Polygon edges as scaled outward normals: gauge = max_i <g_i, v>.
  std::vector<Vec2> edge_normals_;
};

using NormSpacePtr = std::shared_ptr<const NormSpace>;

}  // namespace mink2d
