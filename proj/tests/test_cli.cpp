#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "resonance/commands.hpp"
#include "resonance/config.hpp"
#include "resonance/errors.hpp"

using namespace resonance;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_command(const std::string& command, const std::string& config) {
  std::istringstream in(config);
  const auto entries = parse_config(in);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(command, entries, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

const char* kCylinder = R"(
# hyperbolic cylinder
surface.type = cylinder
surface.lengths = 4
disc.N = 16
disc.refinement = 0
)";

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in("# comment\n\n disc.N = 32 # trailing\nsurface.lengths = 7, 7, 7\n");
  auto entries = parse_config(in);
  CHECK(entries.at("disc.N") == "32");
  CHECK(entries.at("surface.lengths") == "7, 7, 7");
  apply_override(entries, "disc.N=12");
  CHECK(entries.at("disc.N") == "12");
  const auto config = make_run_config(entries);
  CHECK(config.order == 12);
  REQUIRE(config.surface.lengths.size() == 3);
  CHECK(config.surface.lengths[2] == 7.0);
  CHECK(config.echo().at("disc.N") == "12");

  std::istringstream bad("disc.N 32\n");
  CHECK_THROWS_AS(parse_config(bad), Error);
  CHECK_THROWS_AS(apply_override(entries, "novalue"), Error);
  CHECK_THROWS_AS(make_run_config({{"disc.M", "3"}}), Error);
  CHECK_THROWS_AS(make_run_config({{"disc.N", "x"}}), Error);
  CHECK_THROWS_AS(make_run_config({{"disc.N", "0"}}), Error);
  CHECK_THROWS_AS(make_run_config({{"oracle.precision", "quad"}}), Error);
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("0.3") == cplx(0.3, 0.0));
  CHECK(parse_complex("-2i") == cplx(0.0, -2.0));
  CHECK(parse_complex("-0.5+2i") == cplx(-0.5, 2.0));
  CHECK(parse_complex("1e-3-4.5i") == cplx(1e-3, -4.5));
  CHECK(parse_complex("i") == cplx(0.0, 1.0));
  CHECK_THROWS_AS(parse_complex("2j"), Error);
  CHECK_THROWS_AS(parse_complex(""), Error);
}

TEST_CASE("validate") {
  const auto ok = run_command("validate", kCylinder);
  CHECK(ok.code == kExitOk);
  const auto bad = run_command("validate",
                               "surface.type = funneled_torus\nsurface.lengths = 0.1, 0.1\n");
  CHECK(bad.code == kExitInvalidConfig);
  CHECK(run_command("validate", "surface.colour = red\n").code == kExitInvalidConfig);
  CHECK(run_command("launch", kCylinder).code == kExitInvalidConfig);
}

TEST_CASE("lengths") {
  const auto r = run_command("lengths", std::string(kCylinder) + "lengths.max_k = 3\n");
  REQUIRE(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "k,word,length,trace");
  CHECK(r.out.find("# resonance 0.1.0") != std::string::npos);
}

TEST_CASE("resonances on the cylinder, repeated bit for bit") {
  const std::string config = std::string(kCylinder) +
                             "search.re_min = -0.5\nsearch.re_max = 1\n"
                             "search.im_min = -2\nsearch.im_max = 2\n"
                             "search.seed_re = 0.5\nsearch.seed_spacing = 0.1\n";
  const auto a = run_command("resonances", config);
  REQUIRE(a.code == kExitOk);
  const auto lines = data_lines(a.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "re_s,im_s,residual,multiplicity,topological,seed_re,seed_im");
  CHECK(a.out.find("# found = 3") != std::string::npos);
  CHECK(a.out.find("search.seed_re = 0.5") != std::string::npos);
  const auto b = run_command("resonances", config);
  CHECK(a.out == b.out);
}

TEST_CASE("zeta-grid") {
  const auto r = run_command("zeta-grid", std::string(kCylinder) +
                                              "grid.re_points = 3\ngrid.im_points = 2\n");
  REQUIRE(r.code == kExitOk);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "re_s,im_s,log_abs_Z,arg_Z");
}

TEST_CASE("compare") {
  const std::string base = "surface.lengths = 10, 10, 10\ndisc.N = 16\ndisc.refinement = 1\n"
                           "oracle.truncation = 10\ncompare.points = 0.3, 0.5+3i\n";
  const auto pass = run_command("compare", base);
  CHECK(pass.code == kExitOk);
  CHECK(data_lines(pass.out).size() == 3);
  const auto fail = run_command("compare", base + "disc.N = 2\ncompare.tol = 1e-12\n");
  CHECK(fail.code == kExitComparison);
}

TEST_CASE("computation errors map to exit code 2") {
  const auto r = run_command("zeta-grid", std::string(kCylinder) +
                                              "grid.re_min = -400\ngrid.re_max = -399\n");
  CHECK(r.code == kExitComputation);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("command-line binary") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "resonance_cli_test";
  fs::create_directories(dir);
  const fs::path config = dir / "cylinder.cfg";
  const fs::path output = dir / "lengths.csv";
  {
    std::ofstream f(config);
    f << kCylinder << "lengths.max_k = 2\n";
  }
  const std::string exe = RESONANCE_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(exe + " --version") == 0);
  CHECK(status(exe + " validate " + config.string()) == 0);
  CHECK(status(exe + " lengths " + config.string() + " --set output.path=" + output.string()) == 0);
  std::ifstream csv(output);
  std::stringstream text;
  text << csv.rdbuf();
  CHECK(data_lines(text.str()).size() == 5);
  CHECK(status(exe + " validate " + config.string() + " --set disc.N=abc") == 1);
  CHECK(status(exe + " frobnicate") == 1);
  CHECK(status(exe + " validate " + (dir / "missing.cfg").string()) == 1);
  fs::remove_all(dir);
}
