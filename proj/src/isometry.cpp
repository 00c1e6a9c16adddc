#include "mink2d/isometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mink2d/distance_expansion.hpp"
#include "mink2d/error.hpp"

namespace mink2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vec2 eval_sample_map(const SampleMap& m, const NormSpace& target, Vec2 x) {
  const NaturalParam& np = *m.source;
  const double period = np.period();
  const double sigma = np.parameter_of(x);
  const std::size_t n = m.params.size();
  auto it = std::upper_bound(m.params.begin(), m.params.end(), sigma);
  // k: last sample at or before sigma (cyclically).
  const std::size_t k = it == m.params.begin() ? n - 1 : static_cast<std::size_t>(it - m.params.begin()) - 1;
  auto unwrapped = [&](std::ptrdiff_t j) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    const std::ptrdiff_t idx = ((j % nn) + nn) % nn;
    const double shift = std::floor(static_cast<double>(j) / static_cast<double>(n)) * period;
    return std::pair{m.params[static_cast<std::size_t>(idx)] + shift, m.images[static_cast<std::size_t>(idx)]};
  };
  const auto kk = static_cast<std::ptrdiff_t>(k);
  double local = sigma;
  if (m.params[k] > sigma) local += period;  // wrapped past the last sample
  for (std::ptrdiff_t j = kk; j <= kk + 1; ++j) {
    const auto [pj, img] = unwrapped(j);
    if (std::abs(pj - local) <= 1e-12 * period) return img;
  }
  // Four-point Lagrange interpolation in the source parameter.
  Vec2 acc{};
  for (std::ptrdiff_t i = kk - 1; i <= kk + 2; ++i) {
    const auto [pi, img] = unwrapped(i);
    double w = 1.0;
    for (std::ptrdiff_t j = kk - 1; j <= kk + 2; ++j) {
      if (j == i) continue;
      const double pj = unwrapped(j).first;
      w *= (local - pj) / (pi - pj);
    }
    acc += w * img;
  }
  return acc / target.eval(acc);
}

std::vector<std::pair<Vec2, Vec2>> read_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "isometry spec: cannot open sample file '" + path.string() + "'");
  std::vector<std::pair<Vec2, Vec2>> pairs;
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "sx,sy,tx,ty")
        throw Error(ErrorCode::invalid_argument, "isometry spec: sample file header must be 'sx,sy,tx,ty'");
      header_seen = true;
      continue;
    }
    std::array<double, 4> v{};
    std::istringstream row(line);
    std::string cell;
    for (double& x : v) {
      if (!std::getline(row, cell, ','))
        throw Error(ErrorCode::invalid_argument, "isometry spec: sample file line " + std::to_string(lineno) + " has too few fields");
      try {
        std::size_t used = 0;
        x = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument, "isometry spec: sample file line " + std::to_string(lineno) + " is not numeric");
      }
    }
    pairs.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  if (!header_seen) throw Error(ErrorCode::invalid_argument, "isometry spec: sample file is empty");
  return pairs;
}

}  // namespace

// --------------------------------------------------------------------------
// SphereIsometry

SphereIsometry::SphereIsometry(NormSpacePtr source, NormSpacePtr target, IsometryRepresentation rep, double tolerance)
    : source_(std::move(source)), target_(std::move(target)), rep_(std::move(rep)), tolerance_(tolerance) {
  if (!source_ || !target_) throw Error(ErrorCode::invalid_argument, "sphere isometry: null space");
  if (!(tolerance_ > 0.0)) throw Error(ErrorCode::invalid_argument, "sphere isometry: tolerance must be positive");
}

SphereIsometry SphereIsometry::param(NaturalParamPtr source, NaturalParamPtr target, int a, double b, double tolerance) {
  if (!source || !target) throw Error(ErrorCode::invalid_argument, "param isometry: null parameterization");
  if (a != 1 && a != -1) throw Error(ErrorCode::invalid_argument, "param isometry: field 'a' must be +1 or -1");
  if (!std::isfinite(b)) throw Error(ErrorCode::invalid_argument, "param isometry: field 'b' must be finite");
  NormSpacePtr sx = source->space_ptr(), sy = target->space_ptr();
  return {std::move(sx), std::move(sy), ParamMap{a, b, std::move(source), std::move(target)}, tolerance};
}

SphereIsometry SphereIsometry::linear(NormSpacePtr source, NormSpacePtr target, LinearMap2 matrix, double tolerance) {
  for (double e : {matrix.a11, matrix.a12, matrix.a21, matrix.a22})
    if (!std::isfinite(e)) throw Error(ErrorCode::invalid_argument, "linear isometry: matrix entries must be finite");
  return {std::move(source), std::move(target), LinearSphereMap{matrix}, tolerance};
}

SphereIsometry SphereIsometry::samples(NaturalParamPtr source, NormSpacePtr target,
                                       std::span<const std::pair<Vec2, Vec2>> pairs, double tolerance) {
  if (!source || !target) throw Error(ErrorCode::invalid_argument, "sample isometry: null space");
  if (pairs.size() < 8) throw Error(ErrorCode::invalid_argument, "sample isometry: need at least 8 samples");
  struct Row {
    double s;
    Vec2 p, q;
  };
  std::vector<Row> rows;
  rows.reserve(pairs.size());
  for (const auto& [p, q] : pairs) {
    if (!is_finite(p) || !is_finite(q)) throw Error(ErrorCode::invalid_argument, "sample isometry: non-finite sample");
    if (std::abs(source->space().eval(p) - 1.0) > 1e-8)
      throw Error(ErrorCode::invalid_argument, "sample isometry: source point off the source sphere");
    if (std::abs(target->eval(q) - 1.0) > 1e-8)
      throw Error(ErrorCode::invalid_argument, "sample isometry: image off the target sphere");
    rows.push_back({source->parameter_of(p), p, q});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) { return l.s < r.s; });
  SampleMap m;
  m.source = source;
  for (const Row& r : rows) {
    if (!m.params.empty() && r.s - m.params.back() <= 1e-12 * source->period())
      throw Error(ErrorCode::invalid_argument, "sample isometry: duplicate source points");
    m.params.push_back(r.s);
    m.points.push_back(r.p);
    m.images.push_back(r.q);
  }
  NormSpacePtr sx = source->space_ptr();
  return {std::move(sx), std::move(target), std::move(m), tolerance};
}

SphereIsometry SphereIsometry::tabulate(NaturalParamPtr source, NormSpacePtr target,
                                        const std::function<Vec2(Vec2)>& fn, double tolerance) {
  std::vector<std::pair<Vec2, Vec2>> pairs;
  for (const auto& smp : source->samples()) pairs.emplace_back(smp.point, fn(smp.point));
  return samples(std::move(source), std::move(target), pairs, tolerance);
}

Vec2 SphereIsometry::operator()(Vec2 x) const {
  return std::visit(Overloaded{
                        [&](const ParamMap& m) { return m.target->r(m.a * m.source->parameter_of(x) + m.b); },
                        [&](const LinearSphereMap& m) { return m.matrix(x); },
                        [&](const SampleMap& m) { return eval_sample_map(m, *target_, x); },
                    },
                    rep_);
}

std::span<const Vec2> SphereIsometry::sample_points() const {
  if (const auto* m = std::get_if<SampleMap>(&rep_)) return m->points;
  return {};
}

SphereIsometry SphereIsometry::with_sample_image(std::size_t index, Vec2 image) const {
  const auto* m = std::get_if<SampleMap>(&rep_);
  if (!m) throw Error(ErrorCode::invalid_argument, "with_sample_image: not a sample map");
  if (index >= m->images.size()) throw Error(ErrorCode::invalid_argument, "with_sample_image: index out of range");
  SampleMap copy = *m;
  copy.images[index] = image / target_->eval(image);
  return {source_, target_, std::move(copy), tolerance_};
}

SphereIsometry parse_isometry_spec(std::string_view json_text, NaturalParamPtr source, NaturalParamPtr target,
                                   const std::filesystem::path& base_dir) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_argument, std::string("isometry spec: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::invalid_argument, "isometry spec: document must be an object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw Error(ErrorCode::invalid_argument, "isometry spec: field 'kind' must be a string");
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : doc.items())
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        throw Error(ErrorCode::invalid_argument, "isometry spec: unknown field '" + key + "'");
  };
  auto number = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number())
      throw Error(ErrorCode::invalid_argument, std::string("isometry spec: field '") + key + "' must be a number");
    return doc[key].get<double>();
  };

  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "param") {
    reject_unknown({"kind", "a", "b"});
    const double a = number("a");
    if (a != 1.0 && a != -1.0) throw Error(ErrorCode::invalid_argument, "isometry spec: field 'a' must be 1 or -1");
    return SphereIsometry::param(std::move(source), std::move(target), static_cast<int>(a), number("b"));
  }
  if (kind == "linear") {
    reject_unknown({"kind", "matrix"});
    const json& m = doc.contains("matrix") ? doc["matrix"] : json();
    auto bad = [] { return Error(ErrorCode::invalid_argument, "isometry spec: field 'matrix' must be [[a,b],[c,d]]"); };
    if (!m.is_array() || m.size() != 2) throw bad();
    for (const auto& row : m)
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) throw bad();
    const LinearMap2 t{m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(), m[1][1].get<double>()};
    return SphereIsometry::linear(source->space_ptr(), target->space_ptr(), t);
  }
  if (kind == "samples") {
    reject_unknown({"kind", "file"});
    if (!doc.contains("file") || !doc["file"].is_string())
      throw Error(ErrorCode::invalid_argument, "isometry spec: field 'file' must be a string");
    std::filesystem::path file = doc["file"].get<std::string>();
    if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
    const auto pairs = read_sample_csv(file);
    return SphereIsometry::samples(std::move(source), target->space_ptr(), pairs);
  }
  throw Error(ErrorCode::invalid_argument, "isometry spec: field 'kind': unknown kind '" + kind + "'");
}

// --------------------------------------------------------------------------
// Checks

DistortionReport verify_isometry(const SphereIsometry& f, int n_pairs, std::uint64_t seed) {
  if (n_pairs < 1) throw Error(ErrorCode::invalid_argument, "verify_isometry: n_pairs must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  DistortionReport rep;
  for (int i = 0; i < n_pairs; ++i) {
    const Vec2 p = f.source().boundary_point(angle(rng));
    const Vec2 q = f.source().boundary_point(angle(rng));
    const double dist = std::abs(f.target().eval(f(p) - f(q)) - f.source().eval(p - q));
    if (dist > rep.max_distortion) {
      rep.max_distortion = dist;
      rep.p = p;
      rep.q = q;
    }
  }
  return rep;
}

namespace {

std::vector<Vec2> probe_points(const SphereIsometry& f, int n_points) {
  const auto samples = f.sample_points();
  if (!samples.empty()) return {samples.begin(), samples.end()};
  if (n_points < 1) throw Error(ErrorCode::invalid_argument, "sphere probe count must be positive");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) pts.push_back(f.source().boundary_point(kTwoPi * i / n_points));
  return pts;
}

}  // namespace

AntipodalityReport antipodality_check(const SphereIsometry& f, int n_points) {
  AntipodalityReport rep;
  for (Vec2 x : probe_points(f, n_points)) {
    const double r = f.target().eval(f(-x) + f(x));
    if (r > rep.max_residual) {
      rep.max_residual = r;
      rep.worst_point = x;
    }
  }
  return rep;
}

ParamLineFit recover_param_line_isometry(const SphereIsometry& f, const NaturalParam& np_x, const NaturalParam& np_y) {
  if (std::abs(np_x.period() - np_y.period()) > 1e-6)
    throw Error(ErrorCode::verification, "recover_param_line_isometry: spheres not congruent (2L_X = " +
                                             num(np_x.period()) + ", 2L_Y = " + num(np_y.period()) + ")");
  const auto samples = np_x.samples();
  std::vector<double> s_all;
  std::vector<Vec2> img_all;
  for (const auto& smp : samples) {
    s_all.push_back(smp.s);
    img_all.push_back(f(smp.point));
  }
  const std::size_t stride = std::max<std::size_t>(1, samples.size() / 128);
  const NormSpace& sy = np_y.space();

  auto residual = [&](int a, double b, std::size_t step) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s_all.size(); i += step)
      worst = std::max(worst, sy.eval(img_all[i] - np_y.r(a * s_all[i] + b)));
    return worst;
  };

  // The image of r_X(0) pins b; golden-section refines it against the max
  // residual only when neither orientation already fits.
  ParamLineFit best{1, 0.0, INFINITY};
  std::array<double, 2> b0{}, r0{};
  for (int k = 0; k < 2; ++k) {
    const int a = k == 0 ? 1 : -1;
    b0[k] = np_y.parameter_of(img_all.front()) - a * s_all.front();
    r0[k] = residual(a, b0[k], 1);
    if (r0[k] < best.residual) best = {a, np_y.reduce(b0[k]), r0[k]};
  }
  if (best.residual <= 1e-9) return best;
  for (int k = 0; k < 2; ++k) {
    const int a = k == 0 ? 1 : -1;
    const double delta = 2.0 * np_x.grid_step();
    double lo = b0[k] - delta, hi = b0[k] + delta;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = residual(a, c, stride), fd = residual(a, d, stride);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - g * (hi - lo);
        fc = residual(a, c, stride);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + g * (hi - lo);
        fd = residual(a, d, stride);
      }
    }
    const double b = 0.5 * (lo + hi);
    const double r = residual(a, b, 1);
    if (r < best.residual) best = {a, np_y.reduce(b), r};
  }
  if (best.residual > 1e-3)
    throw Error(ErrorCode::verification, "recover_param_line_isometry: no parameter-line isometry fits (residual " +
                                             num(best.residual) + "); f is not an isometry or the spheres are not congruent");
  return best;
}

LinearMap2 reconstruct_linear_extension(const SphereIsometry& f, Vec2 p1, Vec2 p2) {
  const double det = cross(p1 / euclidean_length(p1), p2 / euclidean_length(p2));
  if (!(std::abs(det) >= 0.1))
    throw Error(ErrorCode::degenerate, "reconstruct_linear_extension: anchors are nearly linearly dependent (|det| = " +
                                           num(std::abs(det)) + ")");
  const LinearMap2 src = LinearMap2::from_columns(p1, p2);
  const LinearMap2 dst = LinearMap2::from_columns(f(p1), f(p2));
  return dst * src.inverse();
}

ExtensionCheck verify_extension(const LinearMap2& t, const SphereIsometry& f, int n_points, std::uint64_t seed) {
  ExtensionCheck rep;
  for (Vec2 x : probe_points(f, n_points)) {
    const double e = f.target().eval(t(x) - f(x));
    if (e > rep.max_error) {
      rep.max_error = e;
      rep.worst_point = x;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  for (int i = 0; i < 256; ++i) {
    const double th = angle(rng);
    const Vec2 v = radius(rng) * Vec2{std::cos(th), std::sin(th)};
    rep.norm_distortion = std::max(rep.norm_distortion, std::abs(f.target().eval(t(v)) - f.source().eval(v)));
  }
  return rep;
}

std::pair<double, double> anchor_parameters(const NaturalParam& np) {
  const Vec2 p1 = np.r(0.0);
  double best = -1.0, s_star = 0.0;
  for (const auto& smp : np.samples()) {
    const double det = std::abs(cross(p1, smp.point));
    if (det > best) {
      best = det;
      s_star = smp.s;
    }
  }
  return {0.0, s_star};
}

MazurUlamReport mazur_ulam_check(const NormSpace& space, const SphereIsometry& f, const MazurUlamOptions& opts) {
  MazurUlamReport rep;
  rep.tolerance = f.tolerance();
  const double tol = f.tolerance();
  auto fail = [&](const std::string& what) { rep.failures.push_back(what); };
  auto attempt = [&](const char* step, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      fail(std::string(step) + ": " + e.what());
    }
  };

  if (&space != &f.source()) fail("space: the isometry's source is a different space object");

  NaturalParamPtr np_x, np_y;
  attempt("natural parameterization", [&] {
    if (const auto* pm = std::get_if<ParamMap>(&f.representation())) {
      np_x = pm->source;
      np_y = pm->target;
    } else if (const auto* sm = std::get_if<SampleMap>(&f.representation())) {
      np_x = sm->source;
    }
    if (!np_x) np_x = NaturalParam::build(f.source_ptr(), opts.grid_size);
    if (!np_y) np_y = f.target_ptr() == f.source_ptr() ? np_x : NaturalParam::build(f.target_ptr(), opts.grid_size);
  });

  attempt("verify_isometry", [&] {
    rep.distortion = verify_isometry(f, opts.n_pairs, opts.seed).max_distortion;
    if (!(rep.distortion <= tol)) fail("verify_isometry: distortion " + num(rep.distortion) + " exceeds " + num(tol));
  });
  attempt("antipodality_check", [&] {
    rep.antipodality = antipodality_check(f, opts.n_points).max_residual;
    if (!(rep.antipodality <= 2.0 * tol))
      fail("antipodality_check: residual " + num(rep.antipodality) + " exceeds " + num(2.0 * tol));
  });
  if (!np_x || !np_y) {
    rep.pass = false;
    return rep;
  }
  attempt("recover_param_line_isometry", [&] {
    rep.fit = recover_param_line_isometry(f, *np_x, *np_y);
    if (!(rep.fit->residual <= tol))
      fail("recover_param_line_isometry: residual " + num(rep.fit->residual) + " exceeds " + num(tol));
  });
  attempt("reconstruct_linear_extension", [&] {
    const auto [s1, s2] = anchor_parameters(*np_x);
    rep.anchor_s1 = s1;
    rep.anchor_s2 = s2;
    rep.extension = reconstruct_linear_extension(f, np_x->r(s1), np_x->r(s2));
    const ExtensionCheck ext = verify_extension(rep.extension, f, opts.n_points, opts.seed);
    rep.extension_error = ext.max_error;
    rep.extension_norm_distortion = ext.norm_distortion;
    if (!(ext.max_error <= tol)) fail("verify_extension: max error " + num(ext.max_error) + " exceeds " + num(tol));
    if (!(ext.norm_distortion <= tol))
      fail("verify_extension: linear map distorts norms by " + num(ext.norm_distortion));
  });
  for (double s : {rep.anchor_s1, rep.anchor_s2}) {
    attempt("special_direction_witness", [&] {
      const WitnessReport w = special_direction_witness(f, *np_x, s, opts.n_chords);
      rep.witnesses.push_back({s, np_x->r(s), w.max_residual, w.worst_a, w.worst_b, w.chords});
      if (!(w.max_residual <= tol))
        fail("special_direction_witness: residual " + num(w.max_residual) + " at direction s = " + num(s));
    });
  }
  rep.pass = rep.failures.empty();
  return rep;
}

std::string to_json(const MazurUlamReport& r, int indent) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["status"] = r.pass ? "PASS" : "FAIL";
  doc["tolerance"] = r.tolerance;
  doc["isometry_distortion"] = r.distortion;
  doc["antipodality_residual"] = r.antipodality;
  if (r.fit)
    doc["param_line_isometry"] = {{"a", r.fit->a}, {"b", r.fit->b}, {"residual", r.fit->residual}};
  else
    doc["param_line_isometry"] = nullptr;
  doc["linear_extension"] = {{"matrix", {{r.extension.a11, r.extension.a12}, {r.extension.a21, r.extension.a22}}},
                             {"anchor_s", {r.anchor_s1, r.anchor_s2}},
                             {"max_error", r.extension_error},
                             {"norm_distortion", r.extension_norm_distortion}};
  ordered_json w = ordered_json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"label", "witness evidence"},
                 {"s", x.s},
                 {"direction", {x.direction.x, x.direction.y}},
                 {"max_residual", x.max_residual},
                 {"worst_chord", {{"a", x.worst_a}, {"b", x.worst_b}}},
                 {"chords", x.chords}});
  doc["special_direction_witnesses"] = w;
  doc["failures"] = r.failures;
  return doc.dump(indent);
}

}  // namespace mink2d
