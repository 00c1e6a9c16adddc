#include <doctest.h>

#include "fixtures.hpp"
#include "mink2d/distance_expansion.hpp"
#include "mink2d/error.hpp"
#include "mink2d/isometry.hpp"

using namespace mink2d;
using fixtures::kPi;

namespace {

SphereIsometry rotation(double a) {
  return SphereIsometry::linear(fixtures::euclidean(), fixtures::euclidean(), LinearMap2::rotation(a));
}

void expect_refused(std::string_view text, const char* needle) {
  CAPTURE(text);
  auto np = fixtures::euclidean_param();
  try {
    parse_isometry_spec(text, np, np, MINK2D_TEST_DATA_DIR);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_SUITE("isometry_engine") {
  TEST_CASE("distortion oracles") {
    auto np = fixtures::euclidean_param();
    const auto id = SphereIsometry::linear(fixtures::euclidean(), fixtures::euclidean(), LinearMap2::identity());
    CHECK(verify_isometry(id, 2000).max_distortion == 0.0);
    CHECK(antipodality_check(id, 512).max_residual == 0.0);
    // Angle doubling is not an isometry.
    const auto dbl = SphereIsometry::tabulate(np, fixtures::euclidean(), [](Vec2 x) {
      const double t = 2.0 * std::atan2(x.y, x.x);
      return Vec2{std::cos(t), std::sin(t)};
    });
    CHECK(verify_isometry(dbl, 2000).max_distortion >= 0.1);
    CHECK(antipodality_check(dbl, 512).max_residual >= 1.0);
  }

  TEST_CASE("verify_isometry is seeded") {
    const auto r = rotation(0.3);
    const auto a = verify_isometry(r, 500, 7), b = verify_isometry(r, 500, 7);
    CHECK(a.max_distortion == b.max_distortion);
    CHECK(a.p == b.p);
  }

  TEST_CASE("rotations recover their parameter shift") {
    auto np = fixtures::euclidean_param();
    for (double a : {0.3, 2.5, 5.7, 7.0}) {
      CAPTURE(a);
      const ParamLineFit fit = recover_param_line_isometry(rotation(a), *np, *np);
      CHECK(fit.a == 1);
      CHECK(std::abs(std::remainder(fit.b - a, 2 * kPi)) <= 1e-8);
      CHECK(fit.b >= 0.0);
      CHECK(fit.b < 2 * kPi);
      CHECK(fit.residual <= 1e-8);
    }
    // Reflection across the x-axis reverses orientation.
    const auto flip = SphereIsometry::linear(fixtures::euclidean(), fixtures::euclidean(), {1, 0, 0, -1});
    const ParamLineFit fit = recover_param_line_isometry(flip, *np, *np);
    CHECK(fit.a == -1);
    CHECK(fit.residual <= 1e-8);
  }

  TEST_CASE("param maps evaluate through the parameterizations") {
    auto np = fixtures::lp_param(3.0);
    const double L = np->half_length();
    const auto f = SphereIsometry::param(np, np, 1, L / 2);
    CHECK(fixtures::dist(f(np->r(0.4)), np->r(0.4 + L / 2)) <= 1e-10);
    CHECK(verify_isometry(f, 1000).max_distortion <= 1e-8);
    const ParamLineFit fit = recover_param_line_isometry(f, *np, *np);
    CHECK(std::abs(fit.b - L / 2) <= 1e-8);
    CHECK_THROWS_AS(SphereIsometry::param(np, np, 2, 0.0), Error);
  }

  TEST_CASE("linear extension") {
    auto np = fixtures::euclidean_param();
    const auto r = rotation(0.5);
    const LinearMap2 t = reconstruct_linear_extension(r, np->r(0.0), np->r(kPi / 2));
    CHECK(max_entry_difference(t, LinearMap2::rotation(0.5)) <= 1e-12);
    const ExtensionCheck good = verify_extension(t, r, 512);
    CHECK(good.max_error <= 1e-12);
    CHECK(good.norm_distortion <= 1e-12);
    // The wrong extension misses by the chord of the rotation angle.
    const ExtensionCheck bad = verify_extension(LinearMap2::identity(), r, 1024);
    CHECK(std::abs(bad.max_error - 2 * std::sin(0.25)) <= 1e-6);
    // Near-parallel anchors are degenerate.
    try {
      reconstruct_linear_extension(r, np->r(0.0), np->r(0.01));
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::degenerate);
    }
  }

  TEST_CASE("anchor parameters are far apart") {
    auto np = fixtures::lp_param(4.0);
    const auto [s1, s2] = anchor_parameters(*np);
    CHECK(s1 == 0.0);
    CHECK(std::abs(cross(np->r(s1), np->r(s2))) >= 0.9);
  }

  TEST_CASE("Mazur-Ulam check passes for genuine isometries") {
    for (double a : {0.3, 4.0}) {
      const MazurUlamReport rep = mazur_ulam_check(*fixtures::euclidean(), rotation(a));
      CHECK(rep.pass);
      CHECK(rep.failures.empty());
      CHECK(rep.witnesses.size() == 2);
      for (const auto& w : rep.witnesses) CHECK(w.max_residual <= 1e-8);
    }
    const auto lp = fixtures::lp(4.0);
    const auto swap = SphereIsometry::linear(lp, lp, {0, 1, 1, 0});
    const MazurUlamReport rep = mazur_ulam_check(*lp, swap);
    CHECK(rep.pass);
    REQUIRE(rep.fit.has_value());
    CHECK(rep.fit->a == -1);
    const std::string js = to_json(rep);
    CHECK(js.find("\"status\": \"PASS\"") != std::string::npos);
    CHECK(js.find("witness evidence") != std::string::npos);
  }

  TEST_CASE("Euclidean rotations are not isometries of l4") {
    const auto lp = fixtures::lp(4.0);
    const auto rot = SphereIsometry::linear(lp, lp, LinearMap2::rotation(0.3));
    const MazurUlamReport rep = mazur_ulam_check(*lp, rot);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.failures.empty());
    CHECK(to_json(rep).find("\"status\": \"FAIL\"") != std::string::npos);
  }

  TEST_CASE("special-direction witness") {
    auto np = fixtures::lp_param(3.0);
    const auto id = SphereIsometry::linear(fixtures::lp(3.0), fixtures::lp(3.0), LinearMap2::identity());
    const WitnessReport w = special_direction_witness(id, *np, 0.7, 32);
    CHECK(w.chords >= 16);
    CHECK(w.max_residual <= 1e-12);
  }

  TEST_CASE("sample maps") {
    auto np = fixtures::euclidean_param();
    const std::string spec = R"({"kind":"samples","file":"rotation_samples.csv"})";
    const SphereIsometry f = parse_isometry_spec(spec, np, np, MINK2D_TEST_DATA_DIR);
    CHECK(f.sample_points().size() == 64);
    // Four-point interpolation between 64 samples.
    CHECK(fixtures::dist(f(np->r(0.05)), np->r(0.55)) <= 1e-5);
    CHECK(fixtures::dist(f({1, 0}), {std::cos(0.5), std::sin(0.5)}) <= 1e-15);
    CHECK(antipodality_check(f, 64).max_residual <= 1e-12);

    MazurUlamOptions opts;
    opts.n_points = 64;
    const MazurUlamReport ok = mazur_ulam_check(*fixtures::euclidean(), f, opts);
    CHECK(ok.extension_error <= 1e-12);

    // Perturbing one image breaks antipodality and the extension.
    const SphereIsometry g = f.with_sample_image(3, np->r(0.5 + 2 * kPi * 3 / 64 + 0.05));
    const MazurUlamReport bad = mazur_ulam_check(*fixtures::euclidean(), g, opts);
    CHECK_FALSE(bad.pass);
    CHECK(bad.antipodality >= 1e-2);
    CHECK_THROWS_AS(rotation(0.1).with_sample_image(0, {1, 0}), Error);
  }

  TEST_CASE("sample factories validate") {
    auto np = fixtures::euclidean_param();
    std::vector<std::pair<Vec2, Vec2>> few{{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}};
    CHECK_THROWS_AS(SphereIsometry::samples(np, fixtures::euclidean(), few), Error);
    std::vector<std::pair<Vec2, Vec2>> off;
    for (int i = 0; i < 16; ++i) off.push_back({np->r(i * 0.3), 1.1 * np->r(i * 0.3)});
    CHECK_THROWS_AS(SphereIsometry::samples(np, fixtures::euclidean(), off), Error);
  }

  TEST_CASE("isometry spec parsing") {
    auto np = fixtures::euclidean_param();
    const SphereIsometry lin = parse_isometry_spec(R"({"kind":"linear","matrix":[[0,-1],[1,0]]})", np, np);
    CHECK(fixtures::dist(lin({1, 0}), {0, 1}) == 0.0);
    const SphereIsometry par = parse_isometry_spec(R"({"kind":"param","a":-1,"b":0.5})", np, np);
    CHECK(fixtures::dist(par(np->r(0.2)), np->r(0.3)) <= 1e-10);

    expect_refused(R"({"kind":"rotation"})", "kind");
    expect_refused(R"({"matrix":[[1,0],[0,1]]})", "kind");
    expect_refused(R"({"kind":"linear","matrix":[[1,0]]})", "matrix");
    expect_refused(R"({"kind":"linear","matrix":[[1,0],[0,1]],"extra":1})", "extra");
    expect_refused(R"({"kind":"param","a":0.5,"b":0})", "'a'");
    expect_refused(R"({"kind":"param","a":1})", "'b'");
    expect_refused("{", "JSON");
    try {
      parse_isometry_spec(R"({"kind":"samples","file":"missing.csv"})", np, np, MINK2D_TEST_DATA_DIR);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::io);
    }
  }
}
