#include "mink2d/phase_shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mink2d/error.hpp"
#include "mink2d/parallel.hpp"

namespace mink2d {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

double phase(const NaturalParam& np, double s, double tol) {
  if (np.space().classification().strictly_convex == Tristate::no)
    throw Error(ErrorCode::not_strictly_convex, "phase: space '" + np.space().label() + "' is not strictly convex");
  const Vec2 target = np.r_prime(s);
  // The polar angle is a monotone coordinate along the sphere, so the sphere
  // parameter of r'(s) is unique modulo 2L.
  const double sigma = np.parameter_of(target);
  const double period = np.period();
  double offset = std::fmod(sigma - s, period);
  if (offset < 0.0) offset += period;
  if (offset <= 0.0) offset = period;
  const double phi = s + offset;
  const double residual = euclidean_length(np.r(phi) - target);
  if (!(residual <= tol))
    throw Error(ErrorCode::convergence, "phase: no parameter reproduces r'(s) at s = " + num(s) + " (residual " +
                                            num(residual) + ")");
  return phi;
}

Supercurvature supercurvature(const NaturalParam& np, double s) {
  const Vec2 e0 = np.r(s);
  const Vec2 e1 = np.r_prime(s);
  const double det = cross(e0, e1);
  if (std::abs(det) < 1e-10)
    throw Error(ErrorCode::degenerate, "supercurvature: frame (r, r') degenerate at s = " + num(s));
  const Vec2 w = np.r_prime(phase(np, s));
  const Vec2 c = solve_in_frame(e0, e1, w);
  return {-c.x, c.y};
}

double phase_derivative(const NaturalParam& np, double s, double h) {
  const double step = h > 0.0 ? h : 1e-4 * np.half_length();
  const double q = (phase(np, s + step) - phase(np, s - step)) / (2.0 * step);
  // phi is non-decreasing; only rounding can push the quotient below zero.
  return std::max(q, 0.0);
}

double PhaseProfile::min_increment() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) m = std::min(m, rows[i].phi - rows[i - 1].phi);
  return m;
}

PhaseProfile build_phase_profile(NaturalParamPtr np, int grid_size) {
  if (!np) throw Error(ErrorCode::invalid_argument, "build_phase_profile: null parameterization");
  if (grid_size < 2) throw Error(ErrorCode::invalid_argument, "build_phase_profile: grid_size must be >= 2");
  PhaseProfile prof;
  prof.np = np;
  prof.rows.resize(static_cast<std::size_t>(grid_size));
  const double h = 1e-4 * np->half_length();
  parallel_for(prof.rows.size(), [&](std::size_t i) {
    PhaseRow& row = prof.rows[i];
    row.s = np->period() * static_cast<double>(i) / grid_size;
    try {
      row.phi = phase(*np, row.s);
      const Supercurvature pt = supercurvature(*np, row.s);
      row.P = pt.P;
      row.T = pt.T;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " [profile row s = " + num(row.s) + "]");
    }
    const double coarse = phase_derivative(*np, row.s, h);
    const double fine = phase_derivative(*np, row.s, 0.5 * h);
    if (std::abs(coarse - fine) <= 0.1 * std::max(std::abs(coarse), std::abs(fine))) row.phi_prime = fine;
  });
  for (std::size_t i = 1; i < prof.rows.size(); ++i) {
    if (prof.rows[i].phi < prof.rows[i - 1].phi - 1e-9)
      throw Error(ErrorCode::verification, "build_phase_profile: phase decreases at s = " + num(prof.rows[i].s));
  }
  return prof;
}

}  // namespace mink2d
