#pragma once

#include <cstdint>
#include <vector>

#include "mink2d/natural_param.hpp"

namespace mink2d {

class SphereIsometry;

/// Moving-frame data of a chord r(b) - r(a) = d r(s):
///   r'(b)  = x r(s) + y r'(s)
///   r''(b) = u r(s) + v r'(s)
///   r''(s) = -rho r(s) + tau r'(s)
/// `s` is the effective direction parameter: when the chord through r(b) points
/// along -r(s) the frame is taken at s + L.
struct ChordFrameData {
  double a = 0.0, b = 0.0, s = 0.0;
  double d = 0.0;
  double x = 0.0, y = 0.0;
  double u = 0.0, v = 0.0;
  double rho = 0.0, tau = 0.0;
  double chord_residual = 0.0;  // ‖r(b) - r(a) - d r(s)‖
};

/// Second intersection of the line x + R r(s) with the sphere; x itself when
/// the line is tangent.
Vec2 chord_map(const NaturalParam& np, double s, Vec2 x_point);

/// Frame data at (b, s); r'' from central differences of r' (step 1e-4 L,
/// one Richardson step) unless `fd_step` > 0.
ChordFrameData chord_frame_data(const NaturalParam& np, double b, double s, double fd_step = 0.0);

/// ν(ε) = ‖r(b+ε) - r(a)‖.
double nu(const NaturalParam& np, double a, double b, double eps);

struct NuDerivatives {
  double first = 0.0;
  double second = 0.0;
};

/// Closed forms ν'(0) = x, ν''(0) = u + ρ y² / d.
NuDerivatives nu_derivatives_closed(const ChordFrameData& cfd);

/// Five-point central differences of ν at 0.
NuDerivatives nu_derivatives_fd(const NaturalParam& np, double a, double b, double h);

struct MuEta {
  double mu = 0.0;
  double eta = 0.0;
};

/// r(s+ε) = (1 + μ) r(s) + (ε + η) r'(s).
MuEta mu_eta(const NaturalParam& np, double s, double eps);

/// μ''(0) = (u - ν''(0)) d / y².
double mu_second_closed(const ChordFrameData& cfd, double nu_second);

/// Five-point central second difference of μ at 0.
double mu_second_fd(const NaturalParam& np, double s, double h);

/// φ'(s) = (ν''(0) - u) d / (P y²).
double recover_phi_prime(const ChordFrameData& cfd, double nu_second, double P);

struct ExpansionReport {
  ChordFrameData frame;
  double nu0 = 0.0;
  double nu_prime_closed = 0.0;
  double nu_second_closed = 0.0;
  double nu_prime_fd = 0.0;
  double nu_second_fd = 0.0;
  double mu_second_closed = 0.0;
  double mu_second_fd = 0.0;
  double phi_prime_recovered = 0.0;
};

struct ExpansionOptions {
  double frame_step = 0.0;  // r'' step; 0 selects 1e-4 L
  double nu_step = 0.0;     // ν stencil step; 0 selects 2e-3 L
  double mu_step = 0.0;     // μ stencil step; 0 selects 2e-3 L
};

ExpansionReport expansion_report(const NaturalParam& np, double b, double s, const ExpansionOptions& opts = {});

struct ChordSweepOptions {
  int n_chords = 64;
  double min_chord = 0.1;            // configurations with d below this are discarded
  double singular_exclusion = 1e-2;  // in units of L around the space's singular parameters
  ExpansionOptions expansion;
};

/// Expansion reports for b sampled uniformly at fixed s; sorted by b.
std::vector<ExpansionReport> chord_sweep(const NaturalParam& np, double s, const ChordSweepOptions& opts = {});

/// Distance from s to the nearest singular parameter, modulo 2L.
double distance_to_singular(const NaturalParam& np, double s);

struct WitnessReport {
  double max_residual = 0.0;
  double worst_a = 0.0;
  double worst_b = 0.0;
  int chords = 0;
};

/// Evaluate ‖f(r(b)) - f(r(a)) - ‖r(b)-r(a)‖ f(r(s))‖ over chords parallel to
/// r(s). A small maximum is witness evidence for the direction, not a proof.
WitnessReport special_direction_witness(const SphereIsometry& f, const NaturalParam& np, double s, int n_chords);

}  // namespace mink2d
