#pragma once

#include <optional>
#include <vector>

#include "mink2d/natural_param.hpp"

namespace mink2d {

inline constexpr double kPhaseResidualTolerance = 1e-10;

/// Phase shift phi(s): the smallest parameter t > s with r(t) = r'(s).
/// Result lies in (s, s + 2L]. Throws if the defining residual exceeds `tol`.
double phase(const NaturalParam& np, double s, double tol = kPhaseResidualTolerance);

/// Radial and tangential supercurvatures: r'(phi(s)) = -P r(s) + T r'(s).
struct Supercurvature {
  double P = 0.0;
  double T = 0.0;
};

Supercurvature supercurvature(const NaturalParam& np, double s);

/// Central difference (phi(s+h) - phi(s-h)) / 2h; h <= 0 selects 1e-4 L.
double phase_derivative(const NaturalParam& np, double s, double h = 0.0);

struct PhaseRow {
  double s = 0.0;
  double phi = 0.0;
  std::optional<double> phi_prime;  // absent when scales h and h/2 disagree by > 10%
  double P = 0.0;
  double T = 0.0;
};

struct PhaseProfile {
  NaturalParamPtr np;
  std::vector<PhaseRow> rows;

  /// Smallest row-to-row increment of phi.
  double min_increment() const;
};

/// Tabulate phase, supercurvatures and (where stable) phi' on a uniform grid.
/// Throws if phi decreases between consecutive rows by more than 1e-9.
PhaseProfile build_phase_profile(NaturalParamPtr np, int grid_size);

}  // namespace mink2d
