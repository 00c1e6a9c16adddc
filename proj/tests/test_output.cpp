#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "mink2d/error.hpp"
#include "mink2d/output.hpp"

using namespace mink2d;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

// First line that is not a '# ' metadata comment.
std::string header_of(const std::string& csv) {
  for (const auto& l : lines_of(csv))
    if (l.rfind("# ", 0) != 0) return l;
  return {};
}

std::size_t data_rows(const std::string& csv) {
  std::size_t n = 0;
  for (const auto& l : lines_of(csv)) n += l.rfind("# ", 0) != 0;
  return n - 1;
}

}  // namespace

TEST_SUITE("output") {
  TEST_CASE("twelve significant digits") {
    CHECK(fmt12(3.14159265358979) == "3.14159265359");
    CHECK(fmt12(0.0) == "0");
    CHECK(fmt12(-1e-20) == "-1e-20");
    CHECK(fmt12(6.283185307179586) == "6.28318530718");
  }

  TEST_CASE("metadata rendering") {
    Metadata m;
    m.add("a", "x").add("b", 0.5);
    CHECK(m.render() == "# a: x\n# b: 0.5\n");
    CHECK(m.render("") == "a: x\nb: 0.5\n");
    auto np = fixtures::euclidean_param();
    const std::string meta = base_metadata(*np).render();
    CHECK(meta.find("# norm: euclidean") != std::string::npos);
    CHECK(meta.find("# grid: 1024") != std::string::npos);
    CHECK(meta.find("# self_perimeter: 6.28318530718") != std::string::npos);
    CHECK(meta.find("# orientation: counterclockwise") != std::string::npos);
  }

  TEST_CASE("csv headers and row counts") {
    auto np = fixtures::euclidean_param(256);
    const std::string samples = samples_csv(*np);
    CHECK(header_of(samples) == "s,px,py,tx,ty");
    CHECK(data_rows(samples) == 256);

    const PhaseProfile prof = build_phase_profile(np, 64);
    const std::string phase = phase_csv(prof);
    CHECK(header_of(phase) == "s,phi,phi_prime,P,T");
    CHECK(data_rows(phase) == 64);

    const auto rows = chord_sweep(*np, 0.0, {});
    const std::string exp = expansion_csv(*np, 0.0, rows);
    CHECK(header_of(exp).find("b,a,s,d,x,y,u,v,rho,tau,") == 0);
    CHECK(data_rows(exp) == rows.size());
    for (const auto& l : lines_of(exp))
      if (l.rfind("# ", 0) != 0) CHECK(std::count(l.begin(), l.end(), ',') == 16);

    const std::vector<LipschitzScan> scans{lipschitz_scan(*np, 0.0, 5), lipschitz_scan(*np, 1.0, 5)};
    const std::string lip = lipschitz_csv(*np, scans);
    CHECK(header_of(lip) == "s,verdict,q1,q2,q3,q4,q5");
    CHECK(lip.find("# note: finite-scale heuristic") != std::string::npos);
    CHECK(lip.find("0,bounded,") != std::string::npos);
  }

  TEST_CASE("absent phi' is an empty field") {
    auto np = fixtures::lp_param(3.0);
    const PhaseProfile prof = build_phase_profile(np, 16);
    REQUIRE_FALSE(prof.rows.front().phi_prime.has_value());
    const auto ls = lines_of(phase_csv(prof));
    const auto it = std::find(ls.begin(), ls.end(), "s,phi,phi_prime,P,T");
    REQUIRE(it != ls.end());
    const std::string first = *(it + 1);
    CHECK(first.find(",,") != std::string::npos);
  }

  TEST_CASE("proxy summary") {
    auto np = fixtures::euclidean_param();
    const std::string txt = proxy_summary(absolute_smoothness_proxy(*np, 128));
    CHECK(txt.rfind("verdict: consistent with absolutely smooth\n", 0) == 0);
    CHECK(txt.find("diverging_clusters: 0") != std::string::npos);
    CHECK(txt.find("diverging_ranges: none") != std::string::npos);
  }

  TEST_CASE("svg artifacts carry metadata") {
    auto np = fixtures::lp_param(4.0);
    const std::string sphere = sphere_svg(*np);
    CHECK(sphere.rfind("<?xml", 0) == 0);
    CHECK(sphere.find("half_length: ") != std::string::npos);
    CHECK(sphere.find("<polygon") != std::string::npos);
    CHECK(sphere.find("</svg>") != std::string::npos);
    const std::string phase = phase_svg(build_phase_profile(np, 64));
    CHECK(phase.find("phi(s) - s") != std::string::npos);
    CHECK(phase.find("<polyline") != std::string::npos);
  }

  TEST_CASE("artifacts are deterministic") {
    auto sp = NormSpace::build(lp_spec(3.0));
    auto a = NaturalParam::build(sp, 512), b = NaturalParam::build(sp, 512);
    CHECK(samples_csv(*a) == samples_csv(*b));
    CHECK(phase_csv(build_phase_profile(a, 64)) == phase_csv(build_phase_profile(b, 64)));
    CHECK(proxy_summary(absolute_smoothness_proxy(*a, 64)) == proxy_summary(absolute_smoothness_proxy(*b, 64)));
  }

  TEST_CASE("file writing") {
    const auto path = std::filesystem::temp_directory_path() / "mink2d_output_test.txt";
    write_text_file(path, "a,b\n1,2\n");
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    CHECK(ss.str() == "a,b\n1,2\n");
    std::filesystem::remove(path);
    try {
      write_text_file("/nonexistent-dir/x.txt", "x");
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::io);
    }
  }
}
