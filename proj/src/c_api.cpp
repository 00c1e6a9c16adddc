#include "mink2d/mink2d.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "mink2d/acceptance.hpp"
#include "mink2d/diagnostics.hpp"
#include "mink2d/distance_expansion.hpp"
#include "mink2d/error.hpp"
#include "mink2d/isometry.hpp"
#include "mink2d/output.hpp"
#include "mink2d/phase_shift.hpp"

struct mink2d_norm {
  mink2d::NormSpacePtr space;
};

struct mink2d_param {
  mink2d::NaturalParamPtr np;
};

namespace {

thread_local std::string g_last_error;

mink2d_status fail(mink2d_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
mink2d_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return MINK2D_OK;
  } catch (const mink2d::Error& e) {
    return fail(static_cast<mink2d_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MINK2D_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MINK2D_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MINK2D_ERR_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size() + 1);
  return p;
}

void need(bool ok, const char* what) {
  if (!ok) throw mink2d::Error(mink2d::ErrorCode::invalid_argument, what);
}

int tri(mink2d::Tristate t) {
  switch (t) {
    case mink2d::Tristate::no:
      return MINK2D_NO;
    case mink2d::Tristate::yes:
      return MINK2D_YES;
    default:
      return MINK2D_INDETERMINATE;
  }
}

}  // namespace

extern "C" {

const char* mink2d_version(void) { return "0.1.0"; }

const char* mink2d_last_error(void) { return g_last_error.c_str(); }

const char* mink2d_status_name(mink2d_status status) {
  switch (status) {
    case MINK2D_OK: return "ok";
    case MINK2D_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MINK2D_ERR_NON_SMOOTH: return "non_smooth";
    case MINK2D_ERR_NOT_STRICTLY_CONVEX: return "not_strictly_convex";
    case MINK2D_ERR_CONVERGENCE: return "convergence";
    case MINK2D_ERR_DEGENERATE: return "degenerate";
    case MINK2D_ERR_IO: return "io";
    case MINK2D_ERR_VERIFICATION: return "verification";
    case MINK2D_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void mink2d_string_free(char* s) { std::free(s); }

mink2d_status mink2d_norm_from_json(const char* json, mink2d_norm** out) {
  return guarded([&] {
    need(json && out, "mink2d_norm_from_json: null argument");
    *out = nullptr;
    auto space = mink2d::NormSpace::build(mink2d::parse_norm_spec(json));
    *out = new mink2d_norm{std::move(space)};
  });
}

mink2d_status mink2d_norm_custom(mink2d_gauge_fn gauge, void* user, const char* label, mink2d_norm** out) {
  return guarded([&] {
    need(gauge && out, "mink2d_norm_custom: null argument");
    *out = nullptr;
    mink2d::NormSpec spec;
    spec.label = label ? label : "custom";
    spec.family = mink2d::CustomGauge{[gauge, user](mink2d::Vec2 v) { return gauge(v.x, v.y, user); }, spec.label};
    *out = new mink2d_norm{mink2d::NormSpace::build(std::move(spec))};
  });
}

void mink2d_norm_free(mink2d_norm* norm) { delete norm; }

const char* mink2d_norm_label(const mink2d_norm* norm) { return norm ? norm->space->label().c_str() : ""; }

mink2d_status mink2d_norm_eval(const mink2d_norm* norm, double x, double y, double* out) {
  return guarded([&] {
    need(norm && out, "mink2d_norm_eval: null argument");
    *out = norm->space->eval({x, y});
  });
}

mink2d_status mink2d_norm_boundary_point(const mink2d_norm* norm, double angle, double out[2]) {
  return guarded([&] {
    need(norm && out, "mink2d_norm_boundary_point: null argument");
    const mink2d::Vec2 p = norm->space->boundary_point(angle);
    out[0] = p.x;
    out[1] = p.y;
  });
}

mink2d_status mink2d_norm_classify(const mink2d_norm* norm, int* smooth, int* strictly_convex) {
  return guarded([&] {
    need(norm && smooth && strictly_convex, "mink2d_norm_classify: null argument");
    *smooth = tri(norm->space->classification().smooth);
    *strictly_convex = tri(norm->space->classification().strictly_convex);
  });
}

mink2d_status mink2d_param_build(const mink2d_norm* norm, int grid_size, mink2d_param** out) {
  return guarded([&] {
    need(norm && out, "mink2d_param_build: null argument");
    *out = nullptr;
    *out = new mink2d_param{mink2d::NaturalParam::build(norm->space, grid_size)};
  });
}

void mink2d_param_free(mink2d_param* param) { delete param; }

double mink2d_param_half_length(const mink2d_param* param) { return param ? param->np->half_length() : 0.0; }

int mink2d_param_grid_size(const mink2d_param* param) { return param ? param->np->grid_size() : 0; }

mink2d_status mink2d_param_r(const mink2d_param* param, double s, double out[2]) {
  return guarded([&] {
    need(param && out, "mink2d_param_r: null argument");
    const mink2d::Vec2 p = param->np->r(s);
    out[0] = p.x;
    out[1] = p.y;
  });
}

mink2d_status mink2d_param_r_prime(const mink2d_param* param, double s, double out[2]) {
  return guarded([&] {
    need(param && out, "mink2d_param_r_prime: null argument");
    const mink2d::Vec2 p = param->np->r_prime(s);
    out[0] = p.x;
    out[1] = p.y;
  });
}

mink2d_status mink2d_phase(const mink2d_param* param, double s, double* phi) {
  return guarded([&] {
    need(param && phi, "mink2d_phase: null argument");
    *phi = mink2d::phase(*param->np, s);
  });
}

mink2d_status mink2d_supercurvature(const mink2d_param* param, double s, double* P, double* T) {
  return guarded([&] {
    need(param && P && T, "mink2d_supercurvature: null argument");
    const auto sc = mink2d::supercurvature(*param->np, s);
    *P = sc.P;
    *T = sc.T;
  });
}

mink2d_status mink2d_phase_derivative(const mink2d_param* param, double s, double h, double* out) {
  return guarded([&] {
    need(param && out, "mink2d_phase_derivative: null argument");
    *out = mink2d::phase_derivative(*param->np, s, h);
  });
}

mink2d_status mink2d_expansion(const mink2d_param* param, double b, double s, double out[17]) {
  return guarded([&] {
    need(param && out, "mink2d_expansion: null argument");
    const auto r = mink2d::expansion_report(*param->np, b, s);
    const auto& f = r.frame;
    const double vals[17] = {f.b, f.a, f.s, f.d, f.x, f.y, f.u, f.v, f.rho, f.tau, r.nu_prime_closed, r.nu_prime_fd,
                             r.nu_second_closed, r.nu_second_fd, r.mu_second_closed, r.mu_second_fd,
                             r.phi_prime_recovered};
    std::memcpy(out, vals, sizeof vals);
  });
}

mink2d_status mink2d_lipschitz_scan(const mink2d_param* param, double s, int n_scales, double* quotients, int* verdict) {
  return guarded([&] {
    need(param && quotients && verdict, "mink2d_lipschitz_scan: null argument");
    const auto scan = mink2d::lipschitz_scan(*param->np, s, n_scales);
    std::copy(scan.quotients.begin(), scan.quotients.end(), quotients);
    *verdict = static_cast<int>(scan.verdict);
  });
}

mink2d_status mink2d_samples_csv(const mink2d_param* param, char** csv) {
  return guarded([&] {
    need(param && csv, "mink2d_samples_csv: null argument");
    *csv = dup(mink2d::samples_csv(*param->np));
  });
}

mink2d_status mink2d_sphere_svg(const mink2d_param* param, char** svg) {
  return guarded([&] {
    need(param && svg, "mink2d_sphere_svg: null argument");
    *svg = dup(mink2d::sphere_svg(*param->np));
  });
}

mink2d_status mink2d_phase_report(const mink2d_param* param, int grid_size, char** csv, char** svg) {
  return guarded([&] {
    need(param && csv && svg, "mink2d_phase_report: null argument");
    const auto prof = mink2d::build_phase_profile(param->np, grid_size);
    std::string c = mink2d::phase_csv(prof), s = mink2d::phase_svg(prof);
    *csv = dup(c);
    try {
      *svg = dup(s);
    } catch (...) {
      std::free(*csv);
      *csv = nullptr;
      throw;
    }
  });
}

mink2d_status mink2d_expansion_sweep(const mink2d_param* param, double s, int n_chords, char** csv) {
  return guarded([&] {
    need(param && csv, "mink2d_expansion_sweep: null argument");
    mink2d::ChordSweepOptions opts;
    opts.n_chords = n_chords;
    *csv = dup(mink2d::expansion_csv(*param->np, s, mink2d::chord_sweep(*param->np, s, opts)));
  });
}

mink2d_status mink2d_diagnose(const mink2d_param* param, int grid_size, int n_scales, char** csv, char** summary) {
  return guarded([&] {
    need(param && csv && summary, "mink2d_diagnose: null argument");
    const auto rep = mink2d::absolute_smoothness_proxy(*param->np, grid_size, n_scales);
    const std::string c = mink2d::lipschitz_csv(*param->np, rep.scans);
    const std::string s = mink2d::base_metadata(*param->np).render() + mink2d::proxy_summary(rep);
    *csv = dup(c);
    try {
      *summary = dup(s);
    } catch (...) {
      std::free(*csv);
      *csv = nullptr;
      throw;
    }
  });
}

mink2d_status mink2d_isometry_report(const mink2d_param* source, const mink2d_param* target, const char* spec_json,
                                     const char* base_dir, uint64_t seed, char** json, int* pass) {
  return guarded([&] {
    need(source && target && spec_json && json && pass, "mink2d_isometry_report: null argument");
    const auto f = mink2d::parse_isometry_spec(spec_json, source->np, target->np,
                                               base_dir ? std::filesystem::path(base_dir) : std::filesystem::path());
    mink2d::MazurUlamOptions opts;
    opts.seed = seed;
    const auto rep = mink2d::mazur_ulam_check(f.source(), f, opts);
    *json = dup(mink2d::to_json(rep) + "\n");
    *pass = rep.pass ? 1 : 0;
  });
}

mink2d_status mink2d_run_suite(uint64_t seed, mink2d_progress_fn progress, void* user, char** summary,
                               char** serialized, int* all_pass) {
  return guarded([&] {
    need(summary && all_pass, "mink2d_run_suite: null argument");
    const auto res = mink2d::run_acceptance_suite(seed, [&](const mink2d::CriterionResult& c) {
      if (progress) progress(c.id, c.name.c_str(), c.pass ? 1 : 0, c.detail.c_str(), c.seconds, user);
    });
    *summary = dup(res.summary());
    if (serialized) *serialized = dup(res.serialized());
    *all_pass = res.all_pass() ? 1 : 0;
  });
}

}  // extern "C"
