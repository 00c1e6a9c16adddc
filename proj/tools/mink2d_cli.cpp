// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mink2d/mink2d.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::string norm_path;
  std::string command;
  int grid = 1024;
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  std::string isometry_path;
  double direction = 0.0;  // expand: chord direction parameter, in units of L
  int chords = 64;
  int scales = 8;
};

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(mink2d_status st) {
  switch (st) {
    case MINK2D_ERR_INVALID_ARGUMENT:
    case MINK2D_ERR_NON_SMOOTH:
    case MINK2D_ERR_NOT_STRICTLY_CONVEX:
    case MINK2D_ERR_IO:
      return kExitInput;
    default:
      return kExitVerification;
  }
}

void check(mink2d_status st) {
  if (st != MINK2D_OK) throw Failure{exit_code_for(st), std::string(mink2d_status_name(st)) + ": " + mink2d_last_error()};
}

struct StrDeleter {
  void operator()(char* p) const { mink2d_string_free(p); }
};
using CStr = std::unique_ptr<char, StrDeleter>;

struct NormDeleter {
  void operator()(mink2d_norm* p) const { mink2d_norm_free(p); }
};
struct ParamDeleter {
  void operator()(mink2d_param* p) const { mink2d_param_free(p); }
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, std::string(what) + ": cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const char* content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Failure{kExitInput, "--out: cannot write '" + path.string() + "'"};
  os << content;
  if (!os) throw Failure{kExitInput, "--out: write failed for '" + path.string() + "'"};
  std::cout << "wrote " << path.string() << "\n";
}

std::unique_ptr<mink2d_param, ParamDeleter> build_param(const RunConfig& cfg) {
  if (cfg.norm_path.empty()) throw Failure{kExitInput, "--norm: required for command '" + cfg.command + "'"};
  const std::string json = read_file(cfg.norm_path, "--norm");
  mink2d_norm* raw = nullptr;
  mink2d_status st = mink2d_norm_from_json(json.c_str(), &raw);
  if (st != MINK2D_OK) throw Failure{kExitInput, "--norm: " + std::string(mink2d_last_error())};
  std::unique_ptr<mink2d_norm, NormDeleter> norm(raw);
  mink2d_param* param = nullptr;
  st = mink2d_param_build(norm.get(), cfg.grid, &param);
  if (st != MINK2D_OK) throw Failure{exit_code_for(st), mink2d_last_error()};
  return std::unique_ptr<mink2d_param, ParamDeleter>(param);
}

int run(const RunConfig& cfg) {
  const fs::path out(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw Failure{kExitInput, "--out: cannot create directory '" + cfg.out_dir + "'"};

  if (cfg.command == "suite") {
    char *summary = nullptr, *serialized = nullptr;
    int all_pass = 0;
    // Lines stream as criteria finish; timings go to stderr so stdout stays reproducible.
    auto progress = [](int id, const char* name, int pass, const char* detail, double seconds, void*) {
      std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail);
      std::fflush(stdout);
      std::fprintf(stderr, "  criterion %d took %.2f s\n", id, seconds);
    };
    check(mink2d_run_suite(cfg.seed, progress, nullptr, &summary, &serialized, &all_pass));
    CStr s(summary), z(serialized);
    write_file(out / "suite_report.txt", z.get());
    return all_pass ? kExitOk : kExitVerification;
  }

  auto param = build_param(cfg);
  if (cfg.command == "analyze") {
    char *csv = nullptr, *svg = nullptr;
    check(mink2d_samples_csv(param.get(), &csv));
    CStr c(csv);
    check(mink2d_sphere_svg(param.get(), &svg));
    CStr v(svg);
    write_file(out / "samples.csv", c.get());
    write_file(out / "sphere.svg", v.get());
    std::printf("2L = %.12g\n", 2.0 * mink2d_param_half_length(param.get()));
    return kExitOk;
  }
  if (cfg.command == "phase") {
    char *csv = nullptr, *svg = nullptr;
    check(mink2d_phase_report(param.get(), cfg.grid, &csv, &svg));
    CStr c(csv), v(svg);
    write_file(out / "phase.csv", c.get());
    write_file(out / "phase.svg", v.get());
    return kExitOk;
  }
  if (cfg.command == "expand") {
    char* csv = nullptr;
    const double s = cfg.direction * mink2d_param_half_length(param.get());
    check(mink2d_expansion_sweep(param.get(), s, cfg.chords, &csv));
    CStr c(csv);
    write_file(out / "expansion.csv", c.get());
    return kExitOk;
  }
  if (cfg.command == "diagnose") {
    char *csv = nullptr, *summary = nullptr;
    check(mink2d_diagnose(param.get(), cfg.grid, cfg.scales, &csv, &summary));
    CStr c(csv), s(summary);
    write_file(out / "lipschitz.csv", c.get());
    write_file(out / "smoothness_proxy.txt", s.get());
    return kExitOk;
  }
  if (cfg.command == "isometry") {
    if (cfg.isometry_path.empty()) throw Failure{kExitInput, "--isometry: required for command 'isometry'"};
    const std::string spec = read_file(cfg.isometry_path, "--isometry");
    const std::string base = fs::path(cfg.isometry_path).parent_path().string();
    char* json = nullptr;
    int pass = 0;
    const mink2d_status st =
        mink2d_isometry_report(param.get(), param.get(), spec.c_str(), base.c_str(), cfg.seed, &json, &pass);
    if (st != MINK2D_OK) throw Failure{exit_code_for(st), "--isometry: " + std::string(mink2d_last_error())};
    CStr j(json);
    write_file(out / "isometry_report.json", j.get());
    std::cout << "status " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitOk : kExitVerification;
  }
  throw Failure{kExitInput, "--cmd: unknown command '" + cfg.command + "'"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mink2d: numerical toolkit for 2-D Minkowski planes"};
  RunConfig cfg;
  app.add_option("--norm", cfg.norm_path, "norm spec JSON file");
  app.add_option("--cmd", cfg.command, "command")
      ->required()
      ->check(CLI::IsMember({"analyze", "phase", "expand", "isometry", "diagnose", "suite"}));
  app.add_option("--grid", cfg.grid, "grid size (>= 256)")->check(CLI::Range(256, 1 << 22));
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--isometry", cfg.isometry_path, "isometry spec JSON file");
  app.add_option("--direction", cfg.direction, "expand: chord direction s in units of L");
  app.add_option("--chords", cfg.chords, "expand: number of chords")->check(CLI::PositiveNumber);
  app.add_option("--scales", cfg.scales, "diagnose: dyadic scales per scan (>= 4)")->check(CLI::Range(4, 40));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }
  try {
    return run(cfg);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
}
