#include <doctest.h>

#include "fixtures.hpp"
#include "mink2d/distance_expansion.hpp"
#include "mink2d/error.hpp"
#include "mink2d/phase_shift.hpp"

using namespace mink2d;
using fixtures::kPi;

namespace {

double cyc(double x, double period) { return std::abs(std::remainder(x, period)); }

}  // namespace

TEST_SUITE("distance_expansion") {
  TEST_CASE("chord map oracles on the circle") {
    auto np = fixtures::euclidean_param();
    const Vec2 x = np->r(kPi / 3);
    CHECK(fixtures::dist(chord_map(*np, 0.0, x), np->r(2 * kPi / 3)) <= 1e-10);
    // Tangent line: the point is its own second intersection.
    CHECK(fixtures::dist(chord_map(*np, 0.0, {0, 1}), {0, 1}) <= 1e-7);
    // Lines through the origin hit the antipode.
    CHECK(fixtures::dist(chord_map(*np, 0.8, np->r(0.8)), np->r(0.8 + kPi)) <= 1e-10);
  }

  TEST_CASE("chord map is an involution") {
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      CAPTURE(p);
      auto np = p == 2.0 ? fixtures::euclidean_param() : fixtures::lp_param(p);
      for (double s : {0.2, 1.1, 2.9}) {
        for (double t : {0.5, 1.7, 4.0, 5.5}) {
          const Vec2 x = np->r(t);
          const Vec2 y = chord_map(*np, s, x);
          CHECK(std::abs(np->space().eval(y) - 1.0) <= 1e-10);
          CHECK(fixtures::dist(chord_map(*np, s, y), x) <= 1e-8);
        }
      }
    }
  }

  TEST_CASE("chord frame oracle on the circle") {
    auto np = fixtures::euclidean_param();
    const ChordFrameData f = chord_frame_data(*np, kPi / 3, 0.0);
    CHECK(cyc(f.a - 2 * kPi / 3, 2 * kPi) <= 1e-9);
    CHECK(std::abs(f.d - 1.0) <= 1e-9);
    CHECK(std::abs(f.x + std::sqrt(3.0) / 2) <= 1e-8);
    CHECK(std::abs(f.y - 0.5) <= 1e-8);
    CHECK(std::abs(f.u + 0.5) <= 1e-6);
    CHECK(std::abs(f.v + std::sqrt(3.0) / 2) <= 1e-6);
    CHECK(std::abs(f.rho - 1.0) <= 1e-6);
    CHECK(std::abs(f.tau) <= 1e-6);
    CHECK(f.chord_residual <= 1e-9);
  }

  TEST_CASE("antipodal chord has length 2") {
    for (double p : {2.0, 3.0}) {
      auto np = p == 2.0 ? fixtures::euclidean_param() : fixtures::lp_param(p);
      const double L = np->half_length();
      const ChordFrameData f = chord_frame_data(*np, 0.9, 0.9);
      CHECK(std::abs(f.d - 2.0) <= 1e-9);
      CHECK(cyc(f.a - 0.9 - L, 2 * L) <= 1e-8);
    }
  }

  TEST_CASE("nu, mu and eta closed forms on the circle") {
    auto np = fixtures::euclidean_param();
    for (double eps : {-0.2, -0.01, 0.0, 0.05, 0.3}) {
      CHECK(std::abs(nu(*np, 2 * kPi / 3, kPi / 3, eps) - 2 * std::sin((kPi / 3 - eps) / 2)) <= 1e-9);
      const MuEta me = mu_eta(*np, 1.0, eps);
      CHECK(std::abs(me.mu - (std::cos(eps) - 1)) <= 1e-9);
      CHECK(std::abs(me.eta - (std::sin(eps) - eps)) <= 1e-9);
    }
    const ChordFrameData f = chord_frame_data(*np, kPi / 3, 0.0);
    const NuDerivatives closed = nu_derivatives_closed(f);
    CHECK(std::abs(closed.first + std::sqrt(3.0) / 2) <= 1e-8);
    CHECK(std::abs(closed.second + 0.25) <= 1e-6);
    const NuDerivatives fd = nu_derivatives_fd(*np, f.a, f.b, 1e-2);
    CHECK(std::abs(fd.first - closed.first) <= 1e-7);
    CHECK(std::abs(fd.second - closed.second) <= 1e-6);
    CHECK(std::abs(mu_second_closed(f, closed.second) + 1.0) <= 1e-5);
    CHECK(std::abs(mu_second_fd(*np, 0.0, 1e-2) + 1.0) <= 1e-6);
    CHECK(std::abs(recover_phi_prime(f, closed.second, 1.0) - 1.0) <= 1e-5);
  }

  TEST_CASE("expansion report on the circle") {
    auto np = fixtures::euclidean_param();
    const ExpansionReport r = expansion_report(*np, kPi / 3, 0.0);
    CHECK(std::abs(r.nu0 - 1.0) <= 1e-9);
    CHECK(std::abs(r.nu_prime_closed - r.nu_prime_fd) <= 1e-6);
    CHECK(std::abs(r.nu_second_closed - r.nu_second_fd) <= 1e-5);
    CHECK(std::abs(r.mu_second_closed + 1.0) <= 1e-5);
    CHECK(std::abs(r.mu_second_fd + 1.0) <= 1e-5);
    CHECK(std::abs(r.phi_prime_recovered - 1.0) <= 1e-5);
  }

  TEST_CASE("lp chord sweeps: closed forms agree with finite differences") {
    for (double p : {1.5, 3.0, 4.0}) {
      CAPTURE(p);
      auto np = fixtures::lp_param(p, 4096);
      const double L = np->half_length();
      const double s = 0.3 * L;
      const auto rows = chord_sweep(*np, s, {});
      CHECK(rows.size() >= 32);
      const double dphi = phase_derivative(*np, s);
      auto allow = [](double v) { return 1e-4 + 1e-3 * std::abs(v); };
      double prev_b = -1e300;
      for (const auto& r : rows) {
        CAPTURE(r.frame.b);
        CHECK(r.frame.b > prev_b);
        prev_b = r.frame.b;
        CHECK(r.frame.d >= 0.1);
        CHECK(distance_to_singular(*np, r.frame.b) >= 1e-2 * L - 1e-12);
        CHECK(std::abs(r.nu_prime_closed - r.nu_prime_fd) <= allow(r.nu_prime_closed));
        CHECK(std::abs(r.nu_second_closed - r.nu_second_fd) <= allow(r.nu_second_closed));
        CHECK(std::abs(r.mu_second_closed - r.mu_second_fd) <= allow(r.mu_second_closed));
        CHECK(std::abs(r.phi_prime_recovered - dphi) <= allow(dphi));
      }
    }
  }

  TEST_CASE("distance to singular parameters") {
    auto np = fixtures::lp_param(3.0);
    const double L = np->half_length();
    CHECK(distance_to_singular(*np, 0.0) <= 1e-12);
    CHECK(std::abs(distance_to_singular(*np, L / 4) - L / 4) <= 1e-10);
    CHECK(std::abs(distance_to_singular(*np, 2 * L - 0.1) - 0.1) <= 1e-10);
  }

  TEST_CASE("argument validation") {
    auto np = fixtures::euclidean_param();
    CHECK_THROWS_AS(chord_map(*np, std::nan(""), {1, 0}), Error);
    ChordSweepOptions bad;
    bad.n_chords = 0;
    CHECK_THROWS_AS(chord_sweep(*np, 0.0, bad), Error);
  }
}
