#include "mink2d/distance_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "mink2d/error.hpp"
#include "mink2d/isometry.hpp"
#include "mink2d/parallel.hpp"
#include "mink2d/phase_shift.hpp"

namespace mink2d {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_frame(Vec2 e0, Vec2 e1, double s) {
  if (std::abs(cross(e0, e1)) < 1e-10)
    throw Error(ErrorCode::degenerate, "frame (r, r') degenerate at s = " + num(s));
}

}  // namespace

Vec2 chord_map(const NaturalParam& np, double s, Vec2 x_point) {
  const NormSpace& sp = np.space();
  if (sp.classification().strictly_convex == Tristate::no)
    throw Error(ErrorCode::not_strictly_convex, "chord_map: space '" + sp.label() + "' is not strictly convex");
  if (std::abs(sp.eval(x_point) - 1.0) > 1e-7)
    throw Error(ErrorCode::invalid_argument, "chord_map: point is not on the unit sphere");
  const Vec2 dir = np.r(s);
  auto g = [&](double lambda) { return sp.eval(x_point + lambda * dir); };

  // g is convex with g(0) = 1, and the second root satisfies |lambda| <= 2.
  const auto [lam_min, g_min] = boost::math::tools::brent_find_minima(g, -2.0, 2.0, 52);
  if (g_min > 1.0 - 1e-14) return x_point;  // tangent line: fixed point

  double lo = lam_min, hi = lam_min > 0.0 ? 2.0 : -2.0;
  if (!(g(hi) >= 1.0)) throw Error(ErrorCode::convergence, "chord_map: no second intersection bracketed");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < 1.0 ? lo : hi) = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  if (!(std::abs(g(lambda) - 1.0) <= 1e-12))
    throw Error(ErrorCode::convergence, "chord_map: line-sphere intersection did not converge");
  return x_point + lambda * dir;
}

ChordFrameData chord_frame_data(const NaturalParam& np, double b, double s, double fd_step) {
  const NormSpace& sp = np.space();
  const Vec2 rb = np.r(b);
  const Vec2 other = chord_map(np, s, rb);
  if (sp.eval(rb - other) < 1e-6)
    throw Error(ErrorCode::degenerate, "chord_frame_data: r(b) is a fixed point of the chord map (b = " + num(b) + ")");

  ChordFrameData cfd;
  cfd.b = b;
  cfd.a = np.parameter_of(other);
  const Vec2 diff = rb - np.r(cfd.a);
  cfd.d = sp.eval(diff);
  cfd.s = dot(diff, np.r(s)) >= 0.0 ? np.reduce(s) : np.reduce(s + np.half_length());

  const Vec2 e0 = np.r(cfd.s);
  const Vec2 e1 = np.r_prime(cfd.s);
  require_frame(e0, e1, cfd.s);
  const Vec2 xy = solve_in_frame(e0, e1, np.r_prime(b));
  const Vec2 uv = solve_in_frame(e0, e1, np.r_second(b, fd_step));
  const Vec2 rt = solve_in_frame(e0, e1, np.r_second(cfd.s, fd_step));
  cfd.x = xy.x;
  cfd.y = xy.y;
  cfd.u = uv.x;
  cfd.v = uv.y;
  cfd.rho = -rt.x;
  cfd.tau = rt.y;
  cfd.chord_residual = euclidean_length(diff - cfd.d * e0);
  if (std::abs(cfd.y) < 1e-12)
    throw Error(ErrorCode::degenerate, "chord_frame_data: y = 0, r'(b) parallel to the chord (b = " + num(b) + ")");
  return cfd;
}

double nu(const NaturalParam& np, double a, double b, double eps) {
  return np.space().eval(np.r(b + eps) - np.r(a));
}

NuDerivatives nu_derivatives_closed(const ChordFrameData& cfd) {
  return {cfd.x, cfd.u + cfd.rho * cfd.y * cfd.y / cfd.d};
}

NuDerivatives nu_derivatives_fd(const NaturalParam& np, double a, double b, double h) {
  const double m2 = nu(np, a, b, -2 * h), m1 = nu(np, a, b, -h), z = nu(np, a, b, 0.0);
  const double p1 = nu(np, a, b, h), p2 = nu(np, a, b, 2 * h);
  return {(-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h), (-p2 + 16 * p1 - 30 * z + 16 * m1 - m2) / (12 * h * h)};
}

MuEta mu_eta(const NaturalParam& np, double s, double eps) {
  const Vec2 e0 = np.r(s);
  const Vec2 e1 = np.r_prime(s);
  require_frame(e0, e1, s);
  if (eps == 0.0) return {};
  const Vec2 c = solve_in_frame(e0, e1, np.r(s + eps));
  return {c.x - 1.0, c.y - eps};
}

double mu_second_closed(const ChordFrameData& cfd, double nu_second) {
  if (cfd.y == 0.0) throw Error(ErrorCode::invalid_argument, "mu_second_closed: y = 0");
  return (cfd.u - nu_second) * cfd.d / (cfd.y * cfd.y);
}

double mu_second_fd(const NaturalParam& np, double s, double h) {
  auto mu = [&](double e) { return mu_eta(np, s, e).mu; };
  return (-mu(2 * h) + 16 * mu(h) - 30 * mu(0.0) + 16 * mu(-h) - mu(-2 * h)) / (12 * h * h);
}

double recover_phi_prime(const ChordFrameData& cfd, double nu_second, double P) {
  if (P == 0.0) throw Error(ErrorCode::invalid_argument, "recover_phi_prime: radial supercurvature is zero");
  if (cfd.y == 0.0) throw Error(ErrorCode::invalid_argument, "recover_phi_prime: y = 0");
  return (nu_second - cfd.u) * cfd.d / (P * cfd.y * cfd.y);
}

ExpansionReport expansion_report(const NaturalParam& np, double b, double s, const ExpansionOptions& opts) {
  const double len = np.half_length();
  ExpansionReport rep;
  rep.frame = chord_frame_data(np, b, s, opts.frame_step);
  const ChordFrameData& f = rep.frame;
  rep.nu0 = nu(np, f.a, f.b, 0.0);
  const NuDerivatives closed = nu_derivatives_closed(f);
  const NuDerivatives fd = nu_derivatives_fd(np, f.a, f.b, opts.nu_step > 0.0 ? opts.nu_step : 2e-3 * len);
  rep.nu_prime_closed = closed.first;
  rep.nu_second_closed = closed.second;
  rep.nu_prime_fd = fd.first;
  rep.nu_second_fd = fd.second;
  rep.mu_second_closed = mu_second_closed(f, closed.second);
  rep.mu_second_fd = mu_second_fd(np, f.s, opts.mu_step > 0.0 ? opts.mu_step : 2e-3 * len);
  rep.phi_prime_recovered = recover_phi_prime(f, closed.second, supercurvature(np, f.s).P);
  return rep;
}

double distance_to_singular(const NaturalParam& np, double s) {
  double best = std::numeric_limits<double>::infinity();
  for (double p : np.singular_parameters()) {
    const double d = np.reduce(s - p);
    best = std::min({best, d, np.period() - d});
  }
  return best;
}

std::vector<ExpansionReport> chord_sweep(const NaturalParam& np, double s, const ChordSweepOptions& opts) {
  if (opts.n_chords < 1) throw Error(ErrorCode::invalid_argument, "chord_sweep: n_chords must be positive");
  const double excl = opts.singular_exclusion * np.half_length();
  std::vector<std::optional<ExpansionReport>> slots(static_cast<std::size_t>(opts.n_chords));
  parallel_for(slots.size(), [&](std::size_t i) {
    const double b = np.period() * (static_cast<double>(i) + 0.5) / opts.n_chords;
    if (distance_to_singular(np, b) < excl) return;
    const Vec2 rb = np.r(b);
    const Vec2 other = chord_map(np, s, rb);
    if (np.space().eval(rb - other) < opts.min_chord) return;
    const double dir = dot(rb - other, np.r(s)) >= 0.0 ? s : s + np.half_length();
    if (distance_to_singular(np, dir) < excl) return;
    slots[i] = expansion_report(np, b, s, opts.expansion);
  });
  std::vector<ExpansionReport> out;
  for (auto& slot : slots)
    if (slot) out.push_back(*slot);
  return out;
}

WitnessReport special_direction_witness(const SphereIsometry& f, const NaturalParam& np, double s, int n_chords) {
  if (n_chords < 1) throw Error(ErrorCode::invalid_argument, "special_direction_witness: n_chords must be positive");
  const NormSpace& sx = np.space();
  const NormSpace& sy = f.target();
  const Vec2 dir = np.r(s);
  const Vec2 image_dir = f(dir);
  WitnessReport rep;
  for (int i = 0; i < n_chords; ++i) {
    double b = np.period() * i / n_chords;
    Vec2 pb = np.r(b);
    Vec2 pa = chord_map(np, s, pb);
    if (sx.eval(pb - pa) < 1e-6) continue;
    double a = np.parameter_of(pa);
    if (dot(pb - pa, dir) < 0.0) {
      std::swap(pa, pb);
      std::swap(a, b);
    }
    const double d = sx.eval(pb - pa);
    const double residual = sy.eval(f(pb) - f(pa) - d * image_dir);
    ++rep.chords;
    if (residual > rep.max_residual) {
      rep.max_residual = residual;
      rep.worst_a = a;
      rep.worst_b = b;
    }
  }
  return rep;
}

}  // namespace mink2d
