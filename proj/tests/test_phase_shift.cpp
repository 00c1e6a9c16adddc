#include <doctest.h>

#include "fixtures.hpp"
#include "mink2d/error.hpp"
#include "mink2d/phase_shift.hpp"

using namespace mink2d;
using fixtures::kPi;

TEST_SUITE("phase_shift") {
  TEST_CASE("euclidean oracles") {
    auto np = fixtures::euclidean_param();
    CHECK(std::abs(phase(*np, 0.0) - kPi / 2) <= 1e-8);
    CHECK(std::abs(phase(*np, 1.3) - (1.3 + kPi / 2)) <= 1e-8);
    for (double s : {0.0, 0.7, 2.0, 5.1}) {
      const Supercurvature sc = supercurvature(*np, s);
      CHECK(std::abs(sc.P - 1.0) <= 1e-7);
      CHECK(std::abs(sc.T) <= 1e-7);
      CHECK(std::abs(phase_derivative(*np, s) - 1.0) <= 1e-6);
    }
  }

  TEST_CASE("defining property r(phi(s)) = r'(s) with phi in (s, s + 2L]") {
    for (double p : {1.5, 3.0, 4.0}) {
      CAPTURE(p);
      auto np = fixtures::lp_param(p);
      for (double s : {0.05, 0.9, 2.2, 3.7, 6.0, -1.0, 9.0}) {
        const double phi = phase(*np, s);
        CHECK(phi > s);
        CHECK(phi <= s + np->period());
        CHECK(fixtures::dist(np->r(phi), np->r_prime(s)) <= 1e-10);
      }
    }
  }

  TEST_CASE("lp symmetry: phi(s + L/2) = phi(s) + L/2") {
    auto np = fixtures::lp_param(3.0);
    const double L = np->half_length();
    for (double s : {0.1, 0.8, 1.4}) CHECK(std::abs(phase(*np, s + L / 2) - phase(*np, s) - L / 2) <= 1e-9);
    // Axis tangents: r'(0) = (0,1) = r(L/2).
    CHECK(std::abs(phase(*np, 0.0) - L / 2) <= 1e-9);
  }

  TEST_CASE("lp(3) phi' at a generic parameter matches the curvature ratio") {
    // r''(s) = phi'(s) r'(phi(s)); |r''| from differences of r' gives phi' up to |r'(phi)|.
    auto np = fixtures::lp_param(3.0);
    const double s = 0.7;
    const double dphi = phase_derivative(*np, s);
    const Vec2 rpp = np->r_second(s);
    const Vec2 rp_phi = np->r_prime(phase(*np, s));
    CHECK(dphi > 0.0);
    CHECK(std::abs(euclidean_length(rpp) - dphi * euclidean_length(rp_phi)) <= 1e-6);
    // Away from the axes phi' stabilizes across step sizes.
    CHECK(std::abs(phase_derivative(*np, s, 1e-3) - phase_derivative(*np, s, 5e-4)) <= 1e-5 * dphi);
  }

  TEST_CASE("second-derivative relation in the moving frame") {
    for (double p : {2.0, 3.0, 4.0}) {
      CAPTURE(p);
      auto np = p == 2.0 ? fixtures::euclidean_param() : fixtures::lp_param(p);
      const double L = np->half_length();
      for (int k = 0; k < 16; ++k) {
        const double s = 2 * L * (k + 0.3) / 16;
        const Vec2 c = solve_in_frame(np->r(s), np->r_prime(s), np->r_second(s));
        const Supercurvature sc = supercurvature(*np, s);
        const double d = phase_derivative(*np, s);
        const Vec2 expect{-sc.P * d, sc.T * d};
        CHECK(euclidean_length(c - expect) <= 1e-3 * std::max(euclidean_length(expect), 1e-6));
      }
    }
  }

  TEST_CASE("phase profile") {
    auto np = fixtures::euclidean_param(512);
    const PhaseProfile prof = build_phase_profile(np, 512);
    REQUIRE(prof.rows.size() == 512);
    for (const auto& r : prof.rows) {
      CHECK(std::abs(r.phi - r.s - kPi / 2) <= 1e-7);
      CHECK(std::abs(r.P - 1.0) <= 1e-6);
      CHECK(std::abs(r.T) <= 1e-6);
      REQUIRE(r.phi_prime.has_value());
      CHECK(std::abs(*r.phi_prime - 1.0) <= 1e-6);
    }
    CHECK(prof.min_increment() == doctest::Approx(2 * kPi / 512).epsilon(1e-9));
  }

  TEST_CASE("phase profile is non-decreasing on lp and flags unstable phi'") {
    for (double p : {1.5, 3.0, 4.0}) {
      CAPTURE(p);
      auto np = fixtures::lp_param(p);
      const PhaseProfile prof = build_phase_profile(np, 256);
      CHECK(prof.min_increment() > 0.0);
      // phi' is absent (not extrapolated) at the axis parameter s = 0, where
      // the quotients either blow up (p < 2) or vanish (p > 2).
      CHECK_FALSE(prof.rows.front().phi_prime.has_value());
      int present = 0;
      for (const auto& r : prof.rows) present += r.phi_prime.has_value();
      CHECK(present >= 240);
    }
  }

  TEST_CASE("errors") {
    auto np = fixtures::euclidean_param();
    CHECK_THROWS_AS(phase(*np, std::nan("")), Error);
    CHECK_THROWS_AS(build_phase_profile(np, 0), Error);
    CHECK_THROWS_AS(build_phase_profile(nullptr, 16), Error);
  }
}
