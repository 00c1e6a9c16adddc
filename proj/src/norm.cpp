#include "mink2d/norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "mink2d/error.hpp"

namespace mink2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

Vec2 unit_direction(double t) { return {std::cos(t), std::sin(t)}; }
Vec2 unit_direction_derivative(double t) { return {-std::sin(t), std::cos(t)}; }

double lp_gauge(double p, Vec2 v) {
  const double ax = std::abs(v.x);
  const double ay = std::abs(v.y);
  const double m = std::max(ax, ay);
  if (m == 0.0) return 0.0;
  return m * std::pow(std::pow(ax / m, p) + std::pow(ay / m, p), 1.0 / p);
}

double signed_power(double v, double e) { return std::copysign(std::pow(std::abs(v), e), v); }

struct TrigValues {
  double rho;
  double rho1;  // d rho / dt
  double rho2;  // d^2 rho / dt^2
};

TrigValues trig_radial(const std::vector<double>& coeffs, double t) {
  TrigValues out{1.0, 0.0, 0.0};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double k2 = 2.0 * static_cast<double>(i + 1);
    const double c = std::cos(k2 * t);
    const double s = std::sin(k2 * t);
    out.rho += coeffs[i] * c;
    out.rho1 -= k2 * coeffs[i] * s;
    out.rho2 -= k2 * k2 * coeffs[i] * c;
  }
  return out;
}

double menger_curvature(Vec2 a, Vec2 b, Vec2 c) {
  const double ab = euclidean_length(b - a);
  const double bc = euclidean_length(c - b);
  const double ac = euclidean_length(c - a);
  return 2.0 * std::abs(cross(b - a, c - b)) / (ab * bc * ac);
}

std::string fmt_angle(double t) {
  std::ostringstream os;
  os.precision(12);
  os << t;
  return os.str();
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::no:
      return "false";
    case Tristate::yes:
      return "true";
    case Tristate::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

NormSpec euclidean_spec(std::string label) { return {Euclidean{}, std::move(label)}; }

NormSpec lp_spec(double p, std::string label) {
  if (label.empty()) {
    std::ostringstream os;
    os << "lp" << p;
    label = os.str();
  }
  return {Lp{p}, std::move(label)};
}

NormSpec regular_polygon_spec(int vertex_count, std::string label) {
  if (vertex_count < 4 || vertex_count % 2 != 0)
    throw Error(ErrorCode::invalid_argument, "regular polygon needs an even vertex count >= 4");
  Polygon poly;
  const int half = vertex_count / 2;
  poly.vertices.resize(static_cast<std::size_t>(vertex_count));
  for (int i = 0; i < half; ++i) {
    const double t = kTwoPi * i / vertex_count;
    poly.vertices[static_cast<std::size_t>(i)] = unit_direction(t);
    poly.vertices[static_cast<std::size_t>(i + half)] = -unit_direction(t);
  }
  if (label.empty()) label = "polygon" + std::to_string(vertex_count);
  return {std::move(poly), std::move(label)};
}

// --------------------------------------------------------------------------
// JSON

NormSpec parse_norm_spec(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_argument, std::string("norm spec: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::invalid_argument, "norm spec: document must be an object");

  auto require = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw Error(ErrorCode::invalid_argument, std::string("norm spec: missing field '") + key + "'");
    return doc.at(key);
  };
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : doc.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        throw Error(ErrorCode::invalid_argument, "norm spec: unknown field '" + key + "'");
    }
  };
  auto number = [&](const json& j, const std::string& field) {
    if (!j.is_number()) throw Error(ErrorCode::invalid_argument, "norm spec: field '" + field + "' must be a number");
    return j.get<double>();
  };

  const json& fam = require("family");
  if (!fam.is_string()) throw Error(ErrorCode::invalid_argument, "norm spec: field 'family' must be a string");
  const std::string family = fam.get<std::string>();
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw Error(ErrorCode::invalid_argument, "norm spec: field 'label' must be a string");
    label = doc["label"].get<std::string>();
  }

  if (family == "euclidean") {
    reject_unknown({"family", "label"});
    return euclidean_spec(label.empty() ? "euclidean" : label);
  }
  if (family == "lp") {
    reject_unknown({"family", "p", "label"});
    return lp_spec(number(require("p"), "p"), label);
  }
  if (family == "polygon") {
    reject_unknown({"family", "vertices", "label"});
    const json& verts = require("vertices");
    if (!verts.is_array()) throw Error(ErrorCode::invalid_argument, "norm spec: field 'vertices' must be an array");
    Polygon poly;
    for (const auto& v : verts) {
      if (!v.is_array() || v.size() != 2)
        throw Error(ErrorCode::invalid_argument, "norm spec: field 'vertices' entries must be [x, y] pairs");
      poly.vertices.push_back({number(v[0], "vertices"), number(v[1], "vertices")});
    }
    return {std::move(poly), label.empty() ? "polygon" : label};
  }
  if (family == "trig_perturbed_circle") {
    reject_unknown({"family", "coeffs", "label"});
    const json& cs = require("coeffs");
    if (!cs.is_array()) throw Error(ErrorCode::invalid_argument, "norm spec: field 'coeffs' must be an array");
    TrigPerturbedCircle trig;
    for (const auto& c : cs) trig.coeffs.push_back(number(c, "coeffs"));
    return {std::move(trig), label.empty() ? "trig" : label};
  }
  if (family == "custom")
    throw Error(ErrorCode::invalid_argument,
                "norm spec: field 'family': custom gauges can only be constructed through the library API");
  throw Error(ErrorCode::invalid_argument, "norm spec: field 'family': unknown family '" + family + "'");
}

std::string norm_spec_to_json(const NormSpec& spec) {
  using nlohmann::json;
  json doc = std::visit(
      Overloaded{
          [](const Euclidean&) { return json{{"family", "euclidean"}}; },
          [](const Lp& lp) { return json{{"family", "lp"}, {"p", lp.p}}; },
          [](const Polygon& poly) {
            json verts = json::array();
            for (Vec2 v : poly.vertices) verts.push_back({v.x, v.y});
            return json{{"family", "polygon"}, {"vertices", verts}};
          },
          [](const TrigPerturbedCircle& t) { return json{{"family", "trig_perturbed_circle"}, {"coeffs", t.coeffs}}; },
          [](const CustomGauge&) -> json {
            throw Error(ErrorCode::invalid_argument, "custom gauges have no JSON form");
          },
      },
      spec.family);
  doc["label"] = spec.label;
  return doc.dump();
}

// --------------------------------------------------------------------------
// NormSpace

NormSpace::NormSpace(NormSpec spec) : spec_(std::move(spec)) {}

std::shared_ptr<const NormSpace> NormSpace::build(NormSpec spec, int classification_resolution) {
  if (classification_resolution < 64)
    throw Error(ErrorCode::invalid_argument, "classification resolution must be >= 64");
  std::shared_ptr<NormSpace> space(new NormSpace(std::move(spec)));
  space->validate(classification_resolution);
  space->classification_ = classify(*space, classification_resolution);
  return space;
}

void NormSpace::validate(int resolution) {
  std::visit(
      Overloaded{
          [](const Euclidean&) {},
          [this](const Lp& lp) {
            if (!(lp.p > 1.0) || !std::isfinite(lp.p))
              throw Error(ErrorCode::invalid_argument, "lp norm requires 1 < p < inf");
            if (lp.p != 2.0)
              singular_angles_ = {0.0, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2};
          },
          [this](Polygon& poly) {
            auto& v = poly.vertices;
            const std::size_t n = v.size();
            if (n < 4 || n % 2 != 0)
              throw Error(ErrorCode::invalid_argument, "polygon needs an even number (>= 4) of vertices");
            for (Vec2 p : v)
              if (!is_finite(p)) throw Error(ErrorCode::invalid_argument, "polygon vertex is not finite");
            const std::size_t half = n / 2;
            for (std::size_t i = 0; i < half; ++i) {
              if (euclidean_length(v[i] + v[i + half]) > 1e-12 * (1.0 + euclidean_length(v[i])))
                throw Error(ErrorCode::invalid_argument, "polygon is not centrally symmetric");
              v[i + half] = -v[i];
            }
            double winding = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              const Vec2 a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
              if (!(cross(b - a, c - b) > 0.0))
                throw Error(ErrorCode::invalid_argument, "polygon vertices are not in strictly counterclockwise convex position");
              winding += angle_between(a, b);
            }
            if (std::abs(winding - kTwoPi) > 1e-9)
              throw Error(ErrorCode::invalid_argument, "polygon vertices do not wind once counterclockwise");
            edge_normals_.clear();
            for (std::size_t i = 0; i < n; ++i) {
              const Vec2 e = v[(i + 1) % n] - v[i];
              const Vec2 normal{e.y, -e.x};
              const double h = dot(normal, v[i]);
              if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "origin is not strictly inside the polygon");
              edge_normals_.push_back(normal / h);
            }
            for (Vec2 p : v) singular_angles_.push_back(wrap_angle(std::atan2(p.y, p.x)));
            std::sort(singular_angles_.begin(), singular_angles_.end());
          },
          [resolution](const TrigPerturbedCircle& trig) {
            for (double c : trig.coeffs)
              if (!std::isfinite(c)) throw Error(ErrorCode::invalid_argument, "trig coefficient is not finite");
            for (int i = 0; i < resolution; ++i) {
              const double t = kTwoPi * i / resolution;
              const TrigValues r = trig_radial(trig.coeffs, t);
              if (!(r.rho > 0.0))
                throw Error(ErrorCode::invalid_argument, "trig_perturbed_circle: radial function not positive at angle " + fmt_angle(t));
              // Curvature numerator of the polar curve rho(t).
              const double k = r.rho * r.rho + 2.0 * r.rho1 * r.rho1 - r.rho * r.rho2;
              if (!(k > 0.0))
                throw Error(ErrorCode::invalid_argument, "trig_perturbed_circle: boundary not convex at angle " + fmt_angle(t));
            }
          },
          [resolution](const CustomGauge& custom) {
            if (!custom.gauge) throw Error(ErrorCode::invalid_argument, "custom gauge is empty");
            for (int i = 0; i < resolution; ++i) {
              const Vec2 u = unit_direction(kTwoPi * i / resolution);
              const double a = custom.gauge(u);
              const double b = custom.gauge(-u);
              if (!(a > 0.0) || !std::isfinite(a))
                throw Error(ErrorCode::invalid_argument, "custom gauge not positive at a unit direction");
              if (std::abs(a - b) > 1e-12 * a)
                throw Error(ErrorCode::invalid_argument, "custom gauge is not centrally symmetric");
            }
          },
      },
      spec_.family);
}

bool NormSpace::has_analytic_chart() const { return !std::holds_alternative<CustomGauge>(spec_.family); }

double NormSpace::eval(Vec2 v) const {
  if (!is_finite(v)) throw Error(ErrorCode::invalid_argument, "eval_norm: vector has non-finite components");
  return std::visit(
      Overloaded{
          [&](const Euclidean&) { return std::hypot(v.x, v.y); },
          [&](const Lp& lp) { return lp_gauge(lp.p, v); },
          [&](const Polygon&) {
            double m = 0.0;
            for (Vec2 g : edge_normals_) m = std::max(m, dot(g, v));
            return m;
          },
          [&](const TrigPerturbedCircle& trig) {
            if (v.x == 0.0 && v.y == 0.0) return 0.0;
            // Canonical half-plane keeps eval(v) == eval(-v) bit-exact.
            const Vec2 w = (v.y < 0.0 || (v.y == 0.0 && v.x < 0.0)) ? -v : v;
            return std::hypot(w.x, w.y) / trig_radial(trig.coeffs, std::atan2(w.y, w.x)).rho;
          },
          [&](const CustomGauge& custom) {
            if (v.x == 0.0 && v.y == 0.0) return 0.0;
            return custom.gauge(v);
          },
      },
      spec_.family);
}

Vec2 NormSpace::boundary_point(double angle) const {
  if (const auto* trig = std::get_if<TrigPerturbedCircle>(&spec_.family))
    return trig_radial(trig->coeffs, angle).rho * unit_direction(angle);
  const Vec2 u = unit_direction(angle);
  return u / eval(u);
}

Vec2 NormSpace::chart_derivative(double angle, Side side) const {
  const Vec2 u = unit_direction(angle);
  const Vec2 du = unit_direction_derivative(angle);
  return std::visit(
      Overloaded{
          [&](const Euclidean&) { return du; },
          [&](const Lp& lp) {
            const double n = lp_gauge(lp.p, u);
            const Vec2 grad{signed_power(u.x / n, lp.p - 1.0), signed_power(u.y / n, lp.p - 1.0)};
            return du / n - u * (dot(grad, du) / (n * n));
          },
          [&](const Polygon&) {
            double best = -1.0;
            for (Vec2 g : edge_normals_) best = std::max(best, dot(g, u));
            // Among edges active at u pick the one that stays active on the requested side.
            const double tie = 1e-12 * best;
            Vec2 active{};
            double slope = side == Side::left ? INFINITY : -INFINITY;
            for (Vec2 g : edge_normals_) {
              if (dot(g, u) < best - tie) continue;
              const double d = dot(g, du);
              if (side == Side::left ? d < slope : d > slope) {
                slope = d;
                active = g;
              }
            }
            return du / best - u * (dot(active, du) / (best * best));
          },
          [&](const TrigPerturbedCircle& trig) {
            const TrigValues r = trig_radial(trig.coeffs, angle);
            return r.rho1 * u + r.rho * du;
          },
          [&](const CustomGauge&) {
            // One-sided tangents feed the corner test, so they use a second-order
            // stencil on a finer step; first-order error would read as a corner.
            const double hs = 1e-6;
            switch (side) {
              case Side::left:
                return (3.0 * boundary_point(angle) - 4.0 * boundary_point(angle - hs) + boundary_point(angle - 2 * hs)) /
                       (2.0 * hs);
              case Side::right:
                return (-3.0 * boundary_point(angle) + 4.0 * boundary_point(angle + hs) - boundary_point(angle + 2 * hs)) /
                       (2.0 * hs);
              case Side::central:
                break;
            }
            const double h = kTwoPi * 1e-5;
            return (boundary_point(angle + h) - boundary_point(angle - h)) / (2.0 * h);
          },
      },
      spec_.family);
}

// --------------------------------------------------------------------------
// Classification

namespace {

struct CornerSearch {
  Tristate smooth = Tristate::yes;
  double angle = 0.0;
};

// Bisect toward the largest tangent turning inside [a, b]. A corner keeps its
// turning under refinement; a smooth arc (even with Holder-continuous tangent)
// lets it decay.
CornerSearch search_corner(const NormSpace& space, double a, double b, double tol) {
  auto turning = [&](double lo, double hi) {
    return std::abs(angle_between(space.chart_derivative(lo, Side::right), space.chart_derivative(hi, Side::left)));
  };
  constexpr double kMinWidth = 1e-9;
  double tau = turning(a, b);
  std::vector<double> history{tau};
  while (tau > tol && b - a > kMinWidth) {
    const double m = 0.5 * (a + b);
    const double left = turning(a, m);
    const double right = turning(m, b);
    if (left >= right) {
      b = m;
      tau = left;
    } else {
      a = m;
      tau = right;
    }
    history.push_back(tau);
  }
  if (tau <= tol) return {};
  const double mid = 0.5 * (a + b);
  const double ancestor = history.size() > 3 ? history[history.size() - 4] : history.front();
  const double ratio = ancestor > 0.0 ? tau / ancestor : 1.0;
  if (tau > 10.0 * tol && ratio >= 0.9) return {Tristate::no, mid};
  if (ratio <= 0.75) return {};
  return {Tristate::indeterminate, mid};
}

}  // namespace

Classification classify(const NormSpace& space, int resolution) {
  if (resolution < 64) throw Error(ErrorCode::invalid_argument, "classification resolution must be >= 64");
  const double tol = kClassificationTolerance;
  const auto n = static_cast<std::size_t>(resolution);

  Classification out;
  out.resolution = resolution;

  std::vector<double> t(n + 1);
  std::vector<Vec2> p(n);
  for (std::size_t i = 0; i <= n; ++i) t[i] = kTwoPi * static_cast<double>(i) / resolution;
  for (std::size_t i = 0; i < n; ++i) p[i] = space.boundary_point(t[i]);

  // Strict convexity: three consecutive samples must not be collinear.
  out.strictly_convex = Tristate::yes;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = menger_curvature(p[(i + n - 1) % n], p[i], p[(i + 1) % n]);
    if (k < tol / 10.0) {
      out.strictly_convex = Tristate::no;
      out.convexity_angle = t[i];
      break;
    }
    if (k <= 10.0 * tol && out.strictly_convex == Tristate::yes) {
      out.strictly_convex = Tristate::indeterminate;
      out.convexity_angle = t[i];
    }
  }

  // Smoothness: one-sided tangents agree at samples and no corner hides between them.
  out.smooth = Tristate::yes;
  auto note = [&](Tristate verdict, double angle) {
    if (verdict == Tristate::no && out.smooth != Tristate::no) {
      out.smooth = Tristate::no;
      out.smooth_angle = angle;
    } else if (verdict == Tristate::indeterminate && out.smooth == Tristate::yes) {
      out.smooth = Tristate::indeterminate;
      out.smooth_angle = angle;
    }
  };
  for (std::size_t i = 0; i < n && out.smooth != Tristate::no; ++i) {
    const double jump =
        std::abs(angle_between(space.chart_derivative(t[i], Side::left), space.chart_derivative(t[i], Side::right)));
    if (jump > 10.0 * tol)
      note(Tristate::no, t[i]);
    else if (jump > tol)
      note(Tristate::indeterminate, t[i]);
    if (out.smooth == Tristate::no) break;
    const CornerSearch c = search_corner(space, t[i], t[i + 1], tol);
    note(c.smooth, c.angle);
  }
  return out;
}

}  // namespace mink2d
