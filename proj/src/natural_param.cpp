#include "mink2d/natural_param.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mink2d/error.hpp"
#include "mink2d/isometry.hpp"

namespace mink2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

// Cubic Hermite basis on [0, 1].
struct Hermite {
  double h00, h10, h01, h11;
  explicit Hermite(double u)
      : h00((1 + 2 * u) * (1 - u) * (1 - u)),
        h10(u * (1 - u) * (1 - u)),
        h01(u * u * (3 - 2 * u)),
        h11(u * u * (u - 1)) {}
};

// Gauss-Kronrod over [a, b], mapped onto [-1, 1] first: Boost compares its
// unscaled error estimate with a length-scaled tolerance, which on short
// intervals recurses down to rounding noise.
template <class F>
double gk_integrate(F f, double a, double b, double tol, unsigned depth, double* err = nullptr, double* l1 = nullptr) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto g = [&](double x) { return half * f(mid + half * x); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, -1.0, 1.0, depth, tol, err, l1);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

double NaturalParam::quad_speed(double a, double b) const {
  if (a == b) return 0.0;
  if (b < a) return -quad_speed(b, a);
  const NormSpace& sp = *space_;
  auto speed = [&sp](double t) { return sp.chart_speed(t); };
  return gk_integrate(speed, a, b, tolerance_, 20);
}

NaturalParamPtr NaturalParam::build(NormSpacePtr space, int grid_size, double tol) {
  if (!space) throw Error(ErrorCode::invalid_argument, "build_natural_param: null space");
  const Classification& cls = space->classification();
  if (cls.smooth == Tristate::no)
    throw NonSmoothError(cls.smooth_angle.value_or(0.0),
                         "non-smooth space '" + space->label() + "': corner at angle " + num(cls.smooth_angle.value_or(0.0)));
  if (cls.smooth == Tristate::indeterminate)
    throw NonSmoothError(cls.smooth_angle.value_or(0.0), "non-smooth space '" + space->label() +
                                                             "': smoothness indeterminate near angle " +
                                                             num(cls.smooth_angle.value_or(0.0)));
  if (grid_size < kMinGridSize)
    throw Error(ErrorCode::invalid_argument, "build_natural_param: grid_size must be >= " + std::to_string(kMinGridSize));
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "build_natural_param: tolerance must be positive");

  std::shared_ptr<NaturalParam> np(new NaturalParam());
  np->space_ = std::move(space);
  np->tolerance_ = tol;
  const NormSpace& sp = *np->space_;

  // Cumulative self-arclength along the angular chart.
  const auto m = static_cast<std::size_t>(grid_size);
  np->knot_t_.resize(m + 1);
  np->knot_s_.resize(m + 1);
  for (std::size_t j = 0; j <= m; ++j) np->knot_t_[j] = kTwoPi * static_cast<double>(j) / grid_size;
  np->knot_t_[m] = kTwoPi;
  np->knot_s_[0] = 0.0;
  auto speed = [&sp](double t) { return sp.chart_speed(t); };
  for (std::size_t j = 0; j < m; ++j) {
    double err = 0.0;
    double l1 = 0.0;
    const double piece = gk_integrate(speed, np->knot_t_[j], np->knot_t_[j + 1], tol, 25, &err, &l1);
    // Boost sums unscaled sub-interval errors after recursing, which overstates
    // the error; confirm by halving before giving up.
    bool ok = std::isfinite(piece) && err <= 10.0 * tol * std::max(l1, 1e-300);
    if (!ok && std::isfinite(piece)) {
      const double a = np->knot_t_[j], b = np->knot_t_[j + 1], c = 0.5 * (a + b);
      const double halves = gk_integrate(speed, a, c, tol, 25) + gk_integrate(speed, c, b, tol, 25);
      ok = std::abs(halves - piece) <= 100.0 * tol * std::abs(piece);
    }
    if (!ok)
      throw Error(ErrorCode::convergence, "build_natural_param: arclength quadrature did not converge to tol " + num(tol) +
                                              " near angle " + num(np->knot_t_[j]));
    np->knot_s_[j + 1] = np->knot_s_[j] + piece;
  }
  const double period = np->knot_s_[m];
  np->half_length_ = 0.5 * period;

  // Invert s(t) on the uniform s-grid: Newton on the arclength integral,
  // bisection whenever a step leaves the bracket.
  const auto n = static_cast<std::size_t>(grid_size);
  np->samples_.resize(n);
  np->sample_speed_.resize(n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = period * static_cast<double>(k) / grid_size;
    while (j + 1 < m && np->knot_s_[j + 1] <= target) ++j;
    double lo = np->knot_t_[j];
    double hi = np->knot_t_[j + 1];
    const double base_t = lo;
    const double base_s = np->knot_s_[j];
    double t = lo + (target - base_s) / (np->knot_s_[j + 1] - base_s) * (hi - lo);
    bool converged = k == 0;
    if (k == 0) t = 0.0;
    for (int it = 0; it < 100 && !converged; ++it) {
      const double f = base_s + np->quad_speed(base_t, t) - target;
      if (std::abs(f) <= 1e-15 * period) {
        converged = true;
        break;
      }
      (f > 0.0 ? hi : lo) = t;
      double next = t - f / sp.chart_speed(t);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == t) {
        converged = true;
        break;
      }
      t = next;
    }
    if (!converged)
      throw Error(ErrorCode::convergence, "build_natural_param: arclength inversion failed at s = " + num(target));
    const Vec2 d = sp.chart_derivative(t);
    const double v = sp.eval(d);
    np->samples_[k] = {target, t, sp.boundary_point(t), d / v};
    np->sample_speed_[k] = v;
  }
  return np;
}

NaturalParamPtr NaturalParam::from_table(NormSpacePtr space, double half_length, std::vector<Sample> samples) {
  if (!space) throw Error(ErrorCode::invalid_argument, "natural parameter table: null space");
  if (!(half_length > 0.0)) throw Error(ErrorCode::invalid_argument, "natural parameter table: half-length must be positive");
  if (samples.size() < 4) throw Error(ErrorCode::invalid_argument, "natural parameter table: too few samples");
  const double period = 2.0 * half_length;
  const double step = period / static_cast<double>(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (std::abs(samples[k].s - step * static_cast<double>(k)) > 1e-9 * period)
      throw Error(ErrorCode::invalid_argument, "natural parameter table: s-grid is not uniform over [0, 2L)");
  }
  std::shared_ptr<NaturalParam> np(new NaturalParam());
  np->space_ = std::move(space);
  np->half_length_ = half_length;
  np->samples_ = std::move(samples);
  const std::size_t n = np->samples_.size();
  np->tangent_slope_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 next = np->samples_[(k + 1) % n].tangent;
    const Vec2 prev = np->samples_[(k + n - 1) % n].tangent;
    np->tangent_slope_[k] = (next - prev) / (2.0 * step);
  }
  return np;
}

double NaturalParam::reduce(double s) const {
  const double period = this->period();
  double r = std::fmod(s, period);
  if (r < 0.0) r += period;
  return r >= period ? 0.0 : r;
}

double NaturalParam::angle_at(double s) const {
  const double r = reduce(s);
  const double step = grid_step();
  const std::size_t n = samples_.size();
  const auto k = std::min(static_cast<std::size_t>(r / step), n - 1);
  const Sample& a = samples_[k];
  const double s1 = k + 1 < n ? samples_[k + 1].s : period();
  const double t1 = k + 1 < n ? samples_[k + 1].t : kTwoPi;
  const double v1 = sample_speed_[(k + 1) % n];
  const double h = s1 - a.s;
  const Hermite w((r - a.s) / h);
  double t = w.h00 * a.t + w.h10 * h / sample_speed_[k] + w.h01 * t1 + w.h11 * h / v1;
  // Polish against the arclength integral from the sample.
  for (int it = 0; it < 12; ++it) {
    const double f = a.s + quad_speed(a.t, t) - r;
    if (std::abs(f) <= 1e-16 * period()) break;
    const double next = t - f / space_->chart_speed(t);
    if (next == t) break;
    t = next;
  }
  return t;
}

double NaturalParam::chart_angle(double s) const {
  if (!chart_backed()) throw Error(ErrorCode::invalid_argument, "chart_angle: parameterization is table-backed");
  return wrap_angle(angle_at(s));
}

Vec2 NaturalParam::r(double s) const {
  if (chart_backed()) return space_->boundary_point(angle_at(s));
  const double rs = reduce(s);
  const double step = grid_step();
  const std::size_t n = samples_.size();
  const auto k = std::min(static_cast<std::size_t>(rs / step), n - 1);
  const Sample& a = samples_[k];
  const Sample& b = samples_[(k + 1) % n];
  const Hermite w((rs - a.s) / step);
  return w.h00 * a.point + (w.h10 * step) * a.tangent + w.h01 * b.point + (w.h11 * step) * b.tangent;
}

Vec2 NaturalParam::r_prime(double s) const {
  if (chart_backed()) {
    const Vec2 d = space_->chart_derivative(angle_at(s));
    return d / space_->eval(d);
  }
  const double rs = reduce(s);
  const double step = grid_step();
  const std::size_t n = samples_.size();
  const auto k = std::min(static_cast<std::size_t>(rs / step), n - 1);
  const std::size_t k1 = (k + 1) % n;
  const Hermite w((rs - samples_[k].s) / step);
  return w.h00 * samples_[k].tangent + (w.h10 * step) * tangent_slope_[k] + w.h01 * samples_[k1].tangent +
         (w.h11 * step) * tangent_slope_[k1];
}

Vec2 NaturalParam::r_second(double s, double step) const {
  const double h = step > 0.0 ? step : 1e-4 * half_length_;
  auto central = [&](double hh) { return (r_prime(s + hh) - r_prime(s - hh)) / (2.0 * hh); };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

double NaturalParam::arclength_at_angle(double t) const {
  if (!chart_backed()) throw Error(ErrorCode::invalid_argument, "arclength_at_angle: parameterization is table-backed");
  if (t >= kTwoPi) return period();
  const std::size_t m = knot_t_.size() - 1;
  const double dt = kTwoPi / static_cast<double>(m);
  const auto j = std::min(static_cast<std::size_t>(std::max(t, 0.0) / dt), m - 1);
  return knot_s_[j] + quad_speed(knot_t_[j], t);
}

double NaturalParam::parameter_of(Vec2 point) const {
  if (!is_finite(point)) throw Error(ErrorCode::invalid_argument, "parameter_of: point is not finite");
  if (chart_backed()) return reduce(arclength_at_angle(wrap_angle(std::atan2(point.y, point.x))));

  // Table-backed: polar angle relative to r(0) increases along the grid.
  const double base = std::atan2(samples_[0].point.y, samples_[0].point.x);
  auto rel = [&](Vec2 q) { return wrap_angle(std::atan2(q.y, q.x) - base); };
  const double target = rel(point);
  const std::size_t n = samples_.size();
  std::size_t k = 0;
  {
    std::size_t lo = 0, hi = n;  // rel(sample lo) <= target < rel(sample hi), rel(sample n) = 2pi
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (rel(samples_[mid].point) <= target ? lo : hi) = mid;
    }
    k = lo;
  }
  double lo = samples_[k].s;
  double hi = k + 1 < n ? samples_[k + 1].s : period();
  for (int it = 0; it < 200 && hi - lo > 1e-15 * period(); ++it) {
    const double mid = 0.5 * (lo + hi);
    double a = rel(r(mid));
    if (a < rel(samples_[k].point) - std::numbers::pi) a += kTwoPi;
    (a <= target ? lo : hi) = mid;
  }
  return reduce(0.5 * (lo + hi));
}

std::vector<double> NaturalParam::singular_parameters() const {
  std::vector<double> out;
  for (double a : space_->singular_angles())
    out.push_back(chart_backed() ? reduce(arclength_at_angle(a)) : parameter_of(space_->boundary_point(a)));
  std::sort(out.begin(), out.end());
  return out;
}

NaturalParamPtr pushforward_param(const NaturalParam& np_x, const SphereIsometry& f) {
  const NormSpace& target = f.target();
  const double h = 1e-7 * np_x.half_length();
  std::vector<NaturalParam::Sample> samples;
  samples.reserve(np_x.samples().size());
  double worst = 0.0;
  double worst_s = 0.0;
  for (const auto& smp : np_x.samples()) {
    const Vec2 p = f(smp.point);
    const Vec2 tangent = (f(np_x.r(smp.s + h)) - f(np_x.r(smp.s - h))) / (2.0 * h);
    const double dev = std::abs(target.eval(tangent) - 1.0);
    if (dev > worst) {
      worst = dev;
      worst_s = smp.s;
    }
    samples.push_back({smp.s, 0.0, p, tangent});
  }
  if (worst > 1e-6)
    throw Error(ErrorCode::verification, "pushforward_param: unit self-speed violated, max deviation " + num(worst) +
                                             " at s = " + num(worst_s));
  return NaturalParam::from_table(f.target_ptr(), np_x.half_length(), std::move(samples));
}

}  // namespace mink2d
