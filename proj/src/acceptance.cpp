#include "mink2d/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "mink2d/diagnostics.hpp"
#include "mink2d/distance_expansion.hpp"
#include "mink2d/error.hpp"
#include "mink2d/isometry.hpp"
#include "mink2d/output.hpp"
#include "mink2d/phase_shift.hpp"

namespace mink2d {

namespace {

constexpr double kPi = std::numbers::pi;

// Accumulates failed requirements; the first few go into the detail line.
struct Checks {
  std::vector<std::string> failed;
  std::vector<std::string> facts;

  void require(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  void note(const std::string& key, double v) { facts.push_back(key + "=" + fmt12(v)); }
  void note(const std::string& s) { facts.push_back(s); }

  std::string detail() const {
    std::string out;
    for (const auto& f : facts) out += (out.empty() ? "" : ", ") + f;
    if (!failed.empty()) {
      out += "; failed:";
      for (std::size_t i = 0; i < failed.size() && i < 6; ++i) out += " [" + failed[i] + "]";
      if (failed.size() > 6) out += " (+" + std::to_string(failed.size() - 6) + " more)";
    }
    return out;
  }
};

template <class Body>
CriterionResult timed(int id, std::string name, double budget_s, Body&& body) {
  CriterionResult res;
  res.id = id;
  res.name = std::move(name);
  Checks c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c, res.artifacts);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(res.seconds < budget_s, "runtime over the " + fmt12(budget_s) + " s budget");
  res.pass = c.failed.empty();
  res.detail = c.detail();
  return res;
}

double max_abs(double a, double b) { return std::max(a, std::abs(b)); }

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return !criteria.empty();
}

std::string SuiteResult::summary() const {
  std::string out;
  for (const auto& c : criteria)
    out += std::string(c.pass ? "PASS" : "FAIL") + " [" + std::to_string(c.id) + "] " + c.name + ": " + c.detail + "\n";
  return out;
}

std::string SuiteResult::serialized() const {
  std::string out = summary();
  for (const auto& c : criteria) out += "=== artifacts [" + std::to_string(c.id) + "]\n" + c.artifacts;
  return out;
}

CriterionResult criterion_euclidean(std::uint64_t) {
  return timed(1, "euclidean closed-form suite", 5.0, [](Checks& c, std::string& art) {
    auto np = NaturalParam::build(NormSpace::build(euclidean_spec()), 1024);
    const double eL = std::abs(np->half_length() - kPi);
    c.note("|L-pi|", eL);
    c.require(eL <= 1e-7, "|L - pi| <= 1e-7");

    const PhaseProfile prof = build_phase_profile(np, 512);
    double e_phi = 0, e_p = 0, e_t = 0;
    for (const auto& r : prof.rows) {
      e_phi = max_abs(e_phi, r.phi - r.s - kPi / 2);
      e_p = max_abs(e_p, r.P - 1.0);
      e_t = max_abs(e_t, r.T);
    }
    c.note("max|phi-s-pi/2|", e_phi);
    c.note("max|P-1|", e_p);
    c.note("max|T|", e_t);
    c.require(e_phi <= 1e-6, "phi - s = pi/2 within 1e-6");
    c.require(e_p <= 1e-5, "P = 1 within 1e-5");
    c.require(e_t <= 1e-5, "T = 0 within 1e-5");

    const ExpansionReport e = expansion_report(*np, kPi / 3, 0.0);
    c.note("a", e.frame.a);
    c.note("nu'", e.nu_prime_closed);
    c.note("nu''", e.nu_second_closed);
    c.note("mu''", e.mu_second_closed);
    c.note("phi'_rec", e.phi_prime_recovered);
    c.require(std::abs(e.frame.a - 2 * kPi / 3) <= 1e-7, "chord partner a = 2pi/3");
    c.require(std::abs(e.nu_prime_closed + std::sqrt(3.0) / 2) <= 1e-5, "nu'(0) = -sqrt(3)/2 +- 1e-5");
    c.require(std::abs(e.nu_second_closed + 0.25) <= 1e-4, "nu''(0) = -1/4 +- 1e-4");
    c.require(std::abs(e.mu_second_closed + 1.0) <= 1e-3, "mu''(0) = -1 +- 1e-3");
    c.require(std::abs(e.phi_prime_recovered - 1.0) <= 1e-2, "recovered phi' = 1 +- 1e-2");

    art += phase_csv(prof) + expansion_csv(*np, 0.0, {e});
  });
}

CriterionResult criterion_lp(std::uint64_t) {
  return timed(2, "l_p suite (p = 1.5, 3, 4)", 60.0, [](Checks& c, std::string& art) {
    for (double p : {1.5, 3.0, 4.0}) {
      const std::string tag = "p=" + fmt12(p);
      auto sp = NormSpace::build(lp_spec(p));
      auto np = NaturalParam::build(sp, 4096);
      auto np2 = NaturalParam::build(sp, 8192);
      const double L = np->half_length();
      const double dL = std::abs(np2->half_length() - L);
      c.note(tag + " L", L);
      c.note(tag + " |L(8192)-L(4096)|", dL);
      c.require(L >= 3.0 && L <= 4.0, tag + ": 3 <= L <= 4");
      c.require(dL <= 1e-6, tag + ": |L(2N) - L(N)| <= 1e-6");

      double per = 0;
      for (const auto& smp : np->samples()) per = std::max(per, sp->eval(np->r(smp.s + L) + smp.point));
      c.note(tag + " periodicity", per);
      c.require(per <= 1e-6, tag + ": max ||r(s+L) + r(s)|| <= 1e-6");

      const PhaseProfile prof = build_phase_profile(np, 1024);
      c.require(prof.min_increment() > 0.0, tag + ": phi strictly increasing on the grid");

      // Closed-form nu', nu'' against five-point differences.
      const double s_dir = 0.3 * L;
      const auto rows = chord_sweep(*np, s_dir);
      int bad = 0;
      double worst = 0;
      for (const auto& r : rows) {
        const double e1 = std::abs(r.nu_prime_closed - r.nu_prime_fd) / (1e-4 + 1e-3 * std::abs(r.nu_prime_closed));
        const double e2 = std::abs(r.nu_second_closed - r.nu_second_fd) / (1e-4 + 1e-3 * std::abs(r.nu_second_closed));
        worst = std::max({worst, e1, e2});
        if (e1 > 1.0 || e2 > 1.0) ++bad;
      }
      c.note(tag + " chords", static_cast<double>(rows.size()));
      c.note(tag + " worst nu error / allowance", worst);
      c.require(rows.size() >= 32, tag + ": at least 32 admissible chords");
      c.require(bad == 0, tag + ": " + std::to_string(bad) + " chords outside 1e-4 + 1e-3|value|");

      // r''(s) = phi'(s) r'(phi(s)) = phi'(s) (-P r(s) + T r'(s)).
      double worst_rel = 0;
      int probes = 0;
      const double excl = 1e-2 * L;
      for (int k = 0; k < 64; ++k) {
        const double s = np->period() * (k + 0.5) / 64;
        if (distance_to_singular(*np, s) < excl || distance_to_singular(*np, phase(*np, s)) < excl) continue;
        const Vec2 frame = solve_in_frame(np->r(s), np->r_prime(s), np->r_second(s));
        const Supercurvature sc = supercurvature(*np, s);
        const double dphi = phase_derivative(*np, s);
        const Vec2 expect{-sc.P * dphi, sc.T * dphi};
        worst_rel = std::max(worst_rel, euclidean_length(frame - expect) / std::max(euclidean_length(expect), 1e-8));
        ++probes;
      }
      c.note(tag + " r'' frame worst relative", worst_rel);
      c.require(probes >= 32, tag + ": too few second-derivative probes");
      c.require(worst_rel <= 1e-2, tag + ": frame coordinates of r'' within 1e-2 relative of (-P phi', T phi')");

      art += samples_csv(*np) + phase_csv(prof) + expansion_csv(*np, s_dir, rows);
    }
  });
}

CriterionResult criterion_isometry(std::uint64_t seed) {
  return timed(3, "isometry suite", 30.0, [seed](Checks& c, std::string& art) {
    struct Case {
      std::string name;
      SphereIsometry f;
      NaturalParamPtr np;
    };
    std::vector<Case> cases;
    auto euc = NormSpace::build(euclidean_spec());
    auto np_e = NaturalParam::build(euc, 1024);
    for (double a : {0.3, 1.1, 2.5, 4.0, 5.7})
      cases.push_back({"euclidean rotation " + fmt12(a), SphereIsometry::linear(euc, euc, LinearMap2::rotation(a)), np_e});
    cases.push_back({"euclidean param shift 0.9", SphereIsometry::param(np_e, np_e, 1, 0.9), np_e});
    NaturalParamPtr np3;
    for (double p : {1.5, 3.0, 4.0}) {
      auto sp = NormSpace::build(lp_spec(p));
      auto np = NaturalParam::build(sp, 1024);
      if (p == 3.0) np3 = np;
      const std::string tag = "l" + fmt12(p) + " ";
      const LinearMap2 rot90{0, -1, 1, 0}, flip_x{-1, 0, 0, 1}, flip_y{1, 0, 0, -1};
      cases.push_back({tag + "rot90", SphereIsometry::linear(sp, sp, rot90), np});
      cases.push_back({tag + "flip_x", SphereIsometry::linear(sp, sp, flip_x), np});
      cases.push_back({tag + "flip_y", SphereIsometry::linear(sp, sp, flip_y), np});
      cases.push_back({tag + "rot90*flip_y", SphereIsometry::linear(sp, sp, rot90 * flip_y), np});
    }
    cases.push_back({"l3 param shift L/2", SphereIsometry::param(np3, np3, 1, np3->half_length() / 2), np3});
    cases.push_back({"l3 param reversal", SphereIsometry::param(np3, np3, -1, 0.0), np3});

    MazurUlamOptions opts;
    opts.seed = seed;
    int passed = 0;
    double worst_dist = 0, worst_anti = 0, worst_ext = 0, worst_anchor = 0;
    for (const auto& cs : cases) {
      const double dist = verify_isometry(cs.f, opts.n_pairs, seed).max_distortion;
      const double anti = antipodality_check(cs.f, opts.n_points).max_residual;
      const MazurUlamReport rep = mazur_ulam_check(cs.f.source(), cs.f, opts);
      const NaturalParam& np = *cs.np;
      const LinearMap2 t2 = reconstruct_linear_extension(cs.f, np.r(0.37 * np.half_length()), np.r(1.21 * np.half_length()));
      const double anchor = max_entry_difference(rep.extension, t2);
      worst_dist = std::max(worst_dist, dist);
      worst_anti = std::max(worst_anti, anti);
      worst_ext = std::max(worst_ext, rep.extension_error);
      worst_anchor = std::max(worst_anchor, anchor);
      bool ok = true;
      auto need = [&](bool cond, const std::string& what) {
        c.require(cond, cs.name + ": " + what);
        ok = ok && cond;
      };
      need(dist <= 1e-8, "distortion " + fmt12(dist) + " > 1e-8");
      need(anti <= 1e-7, "antipodality " + fmt12(anti) + " > 1e-7");
      need(rep.extension_error <= 1e-7, "extension error " + fmt12(rep.extension_error) + " > 1e-7");
      need(anchor <= 1e-7, "anchor dependence " + fmt12(anchor) + " > 1e-7");
      need(rep.pass, "mazur_ulam_check FAIL" + (rep.failures.empty() ? std::string() : " (" + rep.failures.front() + ")"));
      if (ok) ++passed;
      art += "--- " + cs.name + "\n" + to_json(rep) + "\n";
    }
    c.note("isometries passing", passed);
    c.note("of", static_cast<double>(cases.size()));
    c.note("max distortion", worst_dist);
    c.note("max antipodality", worst_anti);
    c.note("max extension error", worst_ext);
    c.note("max anchor dependence", worst_anchor);
    c.require(cases.size() == 20, "expected 20 constructed isometries");

    // Negative control.
    const SphereIsometry dbl = SphereIsometry::tabulate(np_e, euc, [](Vec2 x) {
      const double t = 2.0 * std::atan2(x.y, x.x);
      return Vec2{std::cos(t), std::sin(t)};
    });
    const double dd = verify_isometry(dbl, opts.n_pairs, seed).max_distortion;
    const MazurUlamReport drep = mazur_ulam_check(dbl.source(), dbl, opts);
    c.note("angle doubling distortion", dd);
    c.note(std::string("angle doubling verdict ") + (drep.pass ? "PASS" : "FAIL"));
    c.require(dd >= 0.1, "angle doubling distortion >= 0.1");
    c.require(!drep.pass, "angle doubling must FAIL mazur_ulam_check");
    art += "--- angle doubling\n" + to_json(drep) + "\n";
  });
}

CriterionResult criterion_degeneracy(std::uint64_t) {
  return timed(4, "degeneracy suite", 10.0, [](Checks& c, std::string& art) {
    auto hex = NormSpace::build(regular_polygon_spec(6, "hexagon"));
    try {
      NaturalParam::build(hex, 1024);
      c.require(false, "hexagon accepted by build_natural_param");
    } catch (const NonSmoothError& e) {
      const double k = e.angle() / (kPi / 3);
      const bool at_vertex = std::abs(k - std::round(k)) * (kPi / 3) <= 1e-6;
      c.note(std::string("refusal '") + e.what() + "'");
      c.require(at_vertex, "reported corner angle " + fmt12(e.angle()) + " is not a hexagon vertex");
      c.require(std::string(e.what()).find("non-smooth space") != std::string::npos, "refusal message");
      art += std::string(e.what()) + "\n";
    }
    const Classification& h = hex->classification();
    c.note(std::string("hexagon (") + to_string(h.smooth) + "," + to_string(h.strictly_convex) + ")");
    c.require(h.smooth == Tristate::no && h.strictly_convex == Tristate::no, "hexagon classifies (false,false)");
    for (const NormSpec& spec : {euclidean_spec(), lp_spec(1.5), lp_spec(3.0), lp_spec(4.0)}) {
      auto sp = NormSpace::build(spec);
      const Classification& k = sp->classification();
      c.note(sp->label() + " (" + to_string(k.smooth) + "," + to_string(k.strictly_convex) + ")");
      c.require(k.smooth == Tristate::yes && k.strictly_convex == Tristate::yes, sp->label() + " classifies (true,true)");
    }
  });
}

CriterionResult criterion_divergence(std::uint64_t) {
  return timed(5, "divergence suite (l1.5)", 60.0, [](Checks& c, std::string& art) {
    auto np = NaturalParam::build(NormSpace::build(lp_spec(1.5)), 4096);
    const double L = np->half_length();
    constexpr int kScales = 8;

    // Recovered phi' = (nu'' - u) d / (P y^2) with the frame's r'' step on the
    // same dyadic scales; its growth must co-occur with the phase quotients'.
    auto recovered = [&](double s) {
      std::vector<double> v;
      double h = 1e-2 * L;
      for (int k = 0; k < kScales; ++k, h *= 0.5) {
        const ChordFrameData cfd = chord_frame_data(*np, s + 0.3 * L, s, h);
        v.push_back(std::abs(recover_phi_prime(cfd, nu_derivatives_closed(cfd).second, supercurvature(*np, cfd.s).P)));
      }
      return v;
    };

    std::vector<LipschitzScan> scans;
    int axis_div = 0, generic_bounded = 0, agree = 0;
    double min_ratio = 1e300, max_ratio = 0;
    for (int i = 0; i < 4 + 32; ++i) {
      const bool axis = i < 4;
      const double s = axis ? i * L / 2 : np->period() * (i - 4 + 0.5) / 32;
      LipschitzScan scan = lipschitz_scan(*np, s, kScales);
      const LipschitzVerdict rec = classify_quotients(recovered(s));
      if (axis) {
        const auto& q = scan.quotients;
        for (std::size_t k = q.size() - 2; k < q.size(); ++k) {
          min_ratio = std::min(min_ratio, q[k] / q[k - 1]);
          max_ratio = std::max(max_ratio, q[k] / q[k - 1]);
        }
        if (scan.verdict == LipschitzVerdict::diverging) ++axis_div;
      } else if (scan.verdict == LipschitzVerdict::bounded) {
        ++generic_bounded;
      }
      if ((scan.verdict == LipschitzVerdict::diverging) == (rec == LipschitzVerdict::diverging)) ++agree;
      scans.push_back(std::move(scan));
    }
    c.note("axis diverging", axis_div);
    c.note("axis trailing quotient ratios min", min_ratio);
    c.note("max", max_ratio);
    c.note("generic bounded", generic_bounded);
    c.note("recovered-phi' agreement", agree);
    c.require(axis_div == 4, "axis parameters diverging: " + std::to_string(axis_div) + " of 4 (growth factor per halving below 1.5)");
    c.require(generic_bounded == 32, "generic parameters bounded: " + std::to_string(generic_bounded) + " of 32");
    c.require(agree == 36, "recovered phi' divergence co-occurs at " + std::to_string(agree) + " of 36 parameters");
    art += lipschitz_csv(*np, scans);
  });
}

SuiteResult run_acceptance_suite(std::uint64_t seed, const std::function<void(const CriterionResult&)>& progress) {
  auto pass = [&](bool report) {
    SuiteResult r;
    for (auto fn : {criterion_euclidean, criterion_lp, criterion_isometry, criterion_degeneracy, criterion_divergence}) {
      r.criteria.push_back(fn(seed));
      if (report && progress) progress(r.criteria.back());
    }
    return r;
  };
  SuiteResult first = pass(true);
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteResult second = pass(false);
  const std::string a = first.serialized(), b = second.serialized();

  CriterionResult det;
  det.id = 6;
  det.name = "determinism";
  det.pass = a == b;
  if (det.pass) {
    det.detail = "rerun of criteria 1-5 with seed " + std::to_string(seed) + ": " + std::to_string(a.size()) +
                 " serialized bytes identical";
  } else {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    det.detail = "rerun differs at byte " + std::to_string(i) + " of " + std::to_string(a.size());
  }
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  first.criteria.push_back(det);
  if (progress) progress(det);
  return first;
}

}  // namespace mink2d
