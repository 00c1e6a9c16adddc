#include "mink2d/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "mink2d/error.hpp"

namespace mink2d {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Metadata& Metadata::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
  return *this;
}

Metadata& Metadata::add(std::string key, double value) { return add(std::move(key), fmt12(value)); }

std::string Metadata::render(const char* prefix) const {
  std::string out;
  for (const auto& [k, v] : entries) out += prefix + k + ": " + v + "\n";
  return out;
}

Metadata base_metadata(const NaturalParam& np) {
  Metadata m;
  m.add("norm", np.space().label())
      .add("grid", std::to_string(np.grid_size()))
      .add("half_length", np.half_length())
      .add("self_perimeter", np.period())
      .add("build_tolerance", np.build_tolerance())
      .add("orientation", "counterclockwise, r(0) = boundary point at polar angle 0");
  return m;
}

std::string samples_csv(const NaturalParam& np) {
  std::string out = base_metadata(np).render();
  out += "s,px,py,tx,ty\n";
  for (const auto& smp : np.samples())
    out += fmt12(smp.s) + "," + fmt12(smp.point.x) + "," + fmt12(smp.point.y) + "," + fmt12(smp.tangent.x) + "," +
           fmt12(smp.tangent.y) + "\n";
  return out;
}

std::string phase_csv(const PhaseProfile& profile) {
  Metadata m = base_metadata(*profile.np);
  m.add("rows", std::to_string(profile.rows.size()))
      .add("phase_residual_tolerance", kPhaseResidualTolerance)
      .add("phi_prime", "central difference at h = 1e-4 L; empty when h and h/2 disagree by more than 10%");
  std::string out = m.render();
  out += "s,phi,phi_prime,P,T\n";
  for (const auto& r : profile.rows)
    out += fmt12(r.s) + "," + fmt12(r.phi) + "," + (r.phi_prime ? fmt12(*r.phi_prime) : std::string()) + "," +
           fmt12(r.P) + "," + fmt12(r.T) + "\n";
  return out;
}

std::string expansion_csv(const NaturalParam& np, double s, const std::vector<ExpansionReport>& rows) {
  Metadata m = base_metadata(np);
  m.add("direction_s", s)
      .add("chords", std::to_string(rows.size()))
      .add("finite_differences", "five-point stencils, step 2e-3 L; r'' by Richardson-extrapolated central differences");
  std::string out = m.render();
  out += "b,a,s,d,x,y,u,v,rho,tau,nu1_closed,nu1_fd,nu2_closed,nu2_fd,mu2_closed,mu2_fd,phi_prime_rec\n";
  for (const auto& r : rows) {
    const ChordFrameData& f = r.frame;
    const double vals[] = {f.b, f.a, f.s, f.d, f.x, f.y, f.u, f.v, f.rho, f.tau, r.nu_prime_closed, r.nu_prime_fd,
                           r.nu_second_closed, r.nu_second_fd, r.mu_second_closed, r.mu_second_fd, r.phi_prime_recovered};
    std::string line;
    for (double v : vals) line += (line.empty() ? "" : ",") + fmt12(v);
    out += line + "\n";
  }
  return out;
}

std::string lipschitz_csv(const NaturalParam& np, const std::vector<LipschitzScan>& scans) {
  Metadata m = base_metadata(np);
  const std::size_t n = scans.empty() ? 0 : scans.front().quotients.size();
  m.add("scales", "h_k = 1e-2 L 2^-k, k = 0.." + std::to_string(n == 0 ? 0 : n - 1))
      .add("verdict_rule", "diverging: last 3 quotients strictly increasing by >= 1.5x each; bounded: last two ratios <= 1.1")
      .add("note", kProxyDisclaimer);
  std::string out = m.render();
  out += "s,verdict";
  for (std::size_t k = 1; k <= n; ++k) out += ",q" + std::to_string(k);
  out += "\n";
  for (const auto& sc : scans) {
    out += fmt12(sc.s) + "," + to_string(sc.verdict);
    for (double q : sc.quotients) out += "," + fmt12(q);
    out += "\n";
  }
  return out;
}

std::string proxy_summary(const SmoothnessProxyReport& r) {
  Metadata m;
  m.add("verdict", r.verdict)
      .add("note", kProxyDisclaimer)
      .add("grid", std::to_string(r.grid_size))
      .add("diverging_points", std::to_string(r.diverging_points()))
      .add("diverging_clusters", std::to_string(r.diverging_clusters.size()))
      .add("vanishing_clusters", std::to_string(r.vanishing_clusters.size()))
      .add("indeterminate_points", std::to_string(r.indeterminate_points));
  auto list = [](const std::vector<std::vector<double>>& cs) {
    std::string s;
    for (const auto& c : cs) s += (s.empty() ? "" : " ") + fmt12(c.front()) + ".." + fmt12(c.back());
    return s.empty() ? std::string("none") : s;
  };
  m.add("diverging_ranges", list(r.diverging_clusters))
      .add("vanishing_ranges", list(r.vanishing_clusters))
      .add("indeterminate_ranges", list(r.indeterminate_clusters));
  return m.render("");
}

namespace {

struct Canvas {
  double x0, x1, y0, y1;  // data window
  double w = 480, h = 480, pad = 40;

  double px(double x) const { return pad + (x - x0) / (x1 - x0) * (w - 2 * pad); }
  double py(double y) const { return h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad); }
};

std::string svg_open(const Canvas& c, const std::string& title, const Metadata& meta) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!--\n" + meta.render("  ") + "-->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt12(c.w) + "\" height=\"" + fmt12(c.h) +
         "\" viewBox=\"0 0 " + fmt12(c.w) + " " + fmt12(c.h) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt12(c.w / 2) + "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         title + "</text>\n";
  return out;
}

std::string polyline(const Canvas& c, const std::vector<Vec2>& pts, const char* stroke, bool closed) {
  std::string out = closed ? "<polygon" : "<polyline";
  out += " fill=\"none\" stroke=\"";
  out += stroke;
  out += "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    out += (i ? " " : "") + fmt12(c.px(pts[i].x)) + "," + fmt12(c.py(pts[i].y));
  return out + "\"/>\n";
}

std::string line(const Canvas& c, Vec2 a, Vec2 b, const char* stroke) {
  return "<line x1=\"" + fmt12(c.px(a.x)) + "\" y1=\"" + fmt12(c.py(a.y)) + "\" x2=\"" + fmt12(c.px(b.x)) + "\" y2=\"" +
         fmt12(c.py(b.y)) + "\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string sphere_svg(const NaturalParam& np, int glyphs) {
  const auto samples = np.samples();
  double extent = 0.0;
  std::vector<Vec2> pts;
  for (const auto& smp : samples) {
    pts.push_back(smp.point);
    extent = std::max({extent, std::abs(smp.point.x), std::abs(smp.point.y)});
  }
  extent *= 1.25;
  const Canvas c{-extent, extent, -extent, extent};
  std::string out = svg_open(c, "unit sphere of " + np.space().label() + " with tangent field", base_metadata(np));
  out += line(c, {-extent, 0}, {extent, 0}, "#bbbbbb") + line(c, {0, -extent}, {0, extent}, "#bbbbbb");
  out += polyline(c, pts, "black", true);
  const std::size_t stride = std::max<std::size_t>(1, samples.size() / static_cast<std::size_t>(std::max(glyphs, 1)));
  for (std::size_t i = 0; i < samples.size(); i += stride)
    out += line(c, samples[i].point, samples[i].point + 0.15 * samples[i].tangent, "#c0392b");
  return out + "</svg>\n";
}

std::string phase_svg(const PhaseProfile& profile) {
  const NaturalParam& np = *profile.np;
  std::vector<Vec2> pts;
  double lo = 1e300, hi = -1e300;
  for (const auto& r : profile.rows) {
    pts.push_back({r.s, r.phi - r.s});
    lo = std::min(lo, r.phi - r.s);
    hi = std::max(hi, r.phi - r.s);
  }
  const double margin = std::max(0.05 * (hi - lo), 1e-3);
  const Canvas c{0.0, np.period(), lo - margin, hi + margin, 640, 360, 50};
  Metadata m = base_metadata(np);
  m.add("x", "s").add("y", "phi(s) - s");
  std::string out = svg_open(c, "phase shift phi(s) - s, " + np.space().label(), m);
  out += line(c, {0.0, lo - margin}, {np.period(), lo - margin}, "#888888");
  out += line(c, {0.0, lo - margin}, {0.0, hi + margin}, "#888888");
  for (double y : {lo, hi})
    out += "<text x=\"" + fmt12(c.px(0.0) - 4) + "\" y=\"" + fmt12(c.py(y) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + fmt12(y) + "</text>\n";
  out += "<text x=\"" + fmt12(c.px(np.period())) + "\" y=\"" + fmt12(c.py(lo - margin) + 14) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">2L = " + fmt12(np.period()) + "</text>\n";
  out += polyline(c, pts, "#2c3e50", false);
  return out + "</svg>\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw Error(ErrorCode::io, "write failed for '" + path.string() + "'");
}

}  // namespace mink2d
