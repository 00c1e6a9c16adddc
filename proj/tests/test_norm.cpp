#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mink2d/error.hpp"
#include "mink2d/norm.hpp"

using namespace mink2d;
using fixtures::kPi;

TEST_SUITE("norm_core") {
  TEST_CASE("gauge oracles") {
    CHECK(fixtures::euclidean()->eval({3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(fixtures::lp(3)->eval({1, 1}) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
    CHECK(fixtures::lp(1.5)->eval({0, -2}) == doctest::Approx(2.0).epsilon(1e-15));
    // Regular hexagon with vertex (1,0): the edge midpoint along the y-axis is at distance cos(pi/6).
    auto hex = NormSpace::build(regular_polygon_spec(6));
    CHECK(hex->eval({0, std::cos(kPi / 6)}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hex->eval({1, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hex->eval({-2, 0}) == doctest::Approx(2.0).epsilon(1e-14));
    // Square [-1,1]^2 is the l_inf ball.
    auto sq = NormSpace::build({Polygon{{{1, -1}, {1, 1}, {-1, 1}, {-1, -1}}}, "square"});
    CHECK(sq->eval({0.3, -0.7}) == doctest::Approx(0.7).epsilon(1e-14));
    // rho(t) = 1 + 0.1 cos 2t: the unit vector at t = 0 has norm 1 / 1.1.
    auto trig = NormSpace::build({TrigPerturbedCircle{{0.1}}, "trig"});
    CHECK(trig->eval({1, 0}) == doctest::Approx(1.0 / 1.1).epsilon(1e-14));
    CHECK(trig->eval({0, 1}) == doctest::Approx(1.0 / 0.9).epsilon(1e-14));
    CHECK(fixtures::euclidean()->eval({0, 0}) == 0.0);
  }

  TEST_CASE("boundary point oracles") {
    const Vec2 p = fixtures::euclidean()->boundary_point(kPi / 2);
    CHECK(fixtures::dist(p, {0, 1}) <= 1e-15);
    for (double p_exp : {1.5, 3.0, 4.0}) {
      auto sp = fixtures::lp(p_exp);
      for (double t : {0.0, 0.4, 1.7, 3.0, 5.9}) {
        const Vec2 b = sp->boundary_point(t);
        CHECK(sp->eval(b) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(std::remainder(std::atan2(b.y, b.x) - t, 2 * kPi)) <= 1e-13);
      }
    }
  }

  TEST_CASE("analytic chart derivative matches finite differences") {
    for (double p_exp : {1.5, 3.0, 4.0}) {
      auto sp = fixtures::lp(p_exp);
      for (double t : {0.3, 1.0, 2.2, 4.4}) {
        const double h = 1e-6;
        const Vec2 fd = (sp->boundary_point(t + h) - sp->boundary_point(t - h)) / (2 * h);
        CHECK(fixtures::dist(fd, sp->chart_derivative(t)) <= 1e-7 * euclidean_length(fd));
      }
    }
  }

  TEST_CASE("classification") {
    auto check = [](const NormSpacePtr& sp, Tristate smooth, Tristate sc) {
      CAPTURE(sp->label());
      CHECK(sp->classification().smooth == smooth);
      CHECK(sp->classification().strictly_convex == sc);
    };
    check(fixtures::euclidean(), Tristate::yes, Tristate::yes);
    for (double p : {1.5, 3.0, 4.0}) check(fixtures::lp(p), Tristate::yes, Tristate::yes);
    check(NormSpace::build(regular_polygon_spec(6)), Tristate::no, Tristate::no);
    check(NormSpace::build(regular_polygon_spec(8)), Tristate::no, Tristate::no);
    check(NormSpace::build({TrigPerturbedCircle{{0.05, -0.02}}, "trig"}), Tristate::yes, Tristate::yes);
    CHECK(fixtures::euclidean()->is_smooth());
    CHECK_FALSE(NormSpace::build(regular_polygon_spec(6))->is_strictly_convex());
  }

  TEST_CASE("hexagon corner angles are reported") {
    auto hex = NormSpace::build(regular_polygon_spec(6));
    REQUIRE(hex->classification().smooth_angle.has_value());
    const double k = *hex->classification().smooth_angle / (kPi / 3);
    CHECK(std::abs(k - std::round(k)) <= 1e-6);
    CHECK(hex->singular_angles().size() == 6);
  }

  TEST_CASE("invalid specs are refused") {
    CHECK_THROWS_AS(NormSpace::build(lp_spec(1.0)), Error);
    CHECK_THROWS_AS(NormSpace::build(lp_spec(0.5)), Error);
    CHECK_THROWS_AS(NormSpace::build(lp_spec(std::numeric_limits<double>::infinity())), Error);
    // Odd vertex count cannot be centrally symmetric.
    CHECK_THROWS_AS(NormSpace::build({Polygon{{{1, 0}, {0, 1}, {-1, 0}}}, "tri"}), Error);
    // Not symmetric.
    CHECK_THROWS_AS(NormSpace::build({Polygon{{{1, 0}, {0, 1}, {-2, 0}, {0, -1}}}, "kite"}), Error);
    // Clockwise.
    CHECK_THROWS_AS(NormSpace::build({Polygon{{{1, 0}, {0, -1}, {-1, 0}, {0, 1}}}, "cw"}), Error);
    // Non-convex radial function.
    CHECK_THROWS_AS(NormSpace::build({TrigPerturbedCircle{{0.5}}, "bumpy"}), Error);
    try {
      NormSpace::build(lp_spec(0.5));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_argument);
    }
  }

  TEST_CASE("JSON specs") {
    const NormSpec s = parse_norm_spec(R"({"family":"lp","p":3,"label":"cubic"})");
    CHECK(s.label == "cubic");
    REQUIRE(std::holds_alternative<Lp>(s.family));
    CHECK(std::get<Lp>(s.family).p == 3.0);
    const NormSpec round = parse_norm_spec(norm_spec_to_json(s));
    CHECK(round.label == "cubic");
    CHECK(std::get<Lp>(round.family).p == 3.0);

    const NormSpec poly = parse_norm_spec(R"({"family":"polygon","vertices":[[1,0],[0,1],[-1,0],[0,-1]]})");
    CHECK(std::get<Polygon>(poly.family).vertices.size() == 4);
    const NormSpec trig = parse_norm_spec(R"({"family":"trig_perturbed_circle","coeffs":[0.1,0.01]})");
    CHECK(std::get<TrigPerturbedCircle>(trig.family).coeffs.size() == 2);

    auto refused = [](const char* text, const char* needle) {
      CAPTURE(text);
      try {
        parse_norm_spec(text);
        FAIL("accepted");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_argument);
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
      }
    };
    refused(R"({"family":"lp"})", "'p'");
    refused(R"({"family":"lp","p":"three"})", "'p'");
    refused(R"({"family":"lp","p":3,"q":1})", "'q'");
    refused(R"({"family":"custom"})", "family");
    refused(R"({"family":"polygon","vertices":[[1,0,2]]})", "vertices");
    refused(R"({"p":3})", "family");
    refused("not json", "JSON");
  }

  TEST_CASE("custom gauges") {
    NormSpec spec;
    spec.label = "custom l4";
    spec.family = CustomGauge{[](Vec2 v) { return std::pow(std::pow(v.x, 4) + std::pow(v.y, 4), 0.25); }, "l4"};
    auto sp = NormSpace::build(spec);
    CHECK(sp->eval({1, 1}) == doctest::Approx(fixtures::lp(4)->eval({1, 1})).epsilon(1e-14));
    CHECK(sp->is_smooth());
    CHECK_THROWS_AS(norm_spec_to_json(spec), Error);

    NormSpec bad;
    bad.label = "asymmetric";
    bad.family = CustomGauge{[](Vec2 v) { return euclidean_length(v) * (v.x > 0 ? 1.0 : 2.0); }, "asym"};
    CHECK_THROWS_AS(NormSpace::build(bad), Error);
  }
}

TEST_SUITE("norm_core properties") {
  // Seeded random checks of the norm axioms over every built-in family.
  TEST_CASE("triangle inequality, symmetry, homogeneity") {
    std::vector<NormSpacePtr> spaces{fixtures::euclidean(), fixtures::lp(1.5), fixtures::lp(3), fixtures::lp(4),
                                     NormSpace::build(regular_polygon_spec(6)),
                                     NormSpace::build({TrigPerturbedCircle{{0.08, -0.01}}, "trig"})};
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> lam(-5.0, 5.0);
    for (const auto& sp : spaces) {
      CAPTURE(sp->label());
      int violations = 0;
      for (int i = 0; i < 10000; ++i) {
        const Vec2 x{g(rng), g(rng)}, y{g(rng), g(rng)};
        const double nx = sp->eval(x), ny = sp->eval(y);
        if (sp->eval(x + y) > nx + ny + 1e-12 * (nx + ny)) ++violations;
        if (std::abs(sp->eval(-x) - nx) > 1e-14 * nx) ++violations;
        const double l = lam(rng);
        if (std::abs(sp->eval(l * x) - std::abs(l) * nx) > 1e-13 * std::abs(l) * nx) ++violations;
        if (!(nx > 0.0)) ++violations;
      }
      CHECK(violations == 0);
    }
  }
}
