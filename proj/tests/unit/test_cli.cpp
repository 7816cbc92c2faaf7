#include <doctest.h>

#include <sstream>

#include "app.hpp"
#include "io.hpp"
#include "phasekit/errors.hpp"

using namespace phasekit;
using namespace phasekit::cli;

namespace {

int run_cmd(RunConfig c, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("complex and list parsing") {
    CHECK(parse_complex("3,1") == cplx(3.0, 1.0));
    CHECK(parse_complex("2-0.5i") == cplx(2.0, -0.5));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("1.5") == cplx(1.5, 0.0));
    CHECK_THROWS_AS(parse_complex("abc"), Error);
    CHECK(parse_int_list("1,-2,0") == std::vector<long long>{1, -2, 0});
    CHECK_THROWS_AS(parse_int_list("1,0.5"), Error);
  }

  TEST_CASE("lattice.v1 round trip and validation") {
    const MilnorLatticeData d = a_mu_lattice(3);
    const MilnorLatticeData back = lattice_from_json(lattice_to_json(d));
    CHECK(back.seifert == d.seifert);
    CHECK(back.spectrum == d.spectrum);
    json bad = lattice_to_json(d);
    bad["seifert"] = json::array({json::array({1, 0})});
    CHECK_THROWS_AS(lattice_from_json(bad), Error);
    json wrong_schema = lattice_to_json(d);
    wrong_schema["schema"] = "path.v1";
    CHECK_THROWS_AS(lattice_from_json(wrong_schema), Error);
  }

  TEST_CASE("path.v1 parsing") {
    const json j = json::parse(R"({"schema":"path.v1","points":[[4,0],[0,4],[-4,0]],"clearance":0.01})");
    const LoopInput p = path_from_json(j);
    CHECK(p.points.size() == 3);
    CHECK(p.clearance == 0.01);
    CHECK_THROWS_AS(path_from_json(json::parse(R"({"points":[[1,2,3]]})")), Error);
  }

  TEST_CASE("exit codes by failure class") {
    RunConfig c;
    c.command = "validate";
    c.builtin = "A2";
    std::string text;
    CHECK(run_cmd(c, &text) == kExitOk);
    const json report = json::parse(text);
    CHECK(report["schema"] == "report.v1");
    CHECK(report["ok"] == true);

    c.builtin = "E8";
    CHECK(run_cmd(c) == kExitParse);

    RunConfig omega;
    omega.command = "omega";
    omega.builtin = "A2";
    omega.lambda = "0.5,0";
    omega.mu = "1,0";
    CHECK(run_cmd(omega) == kExitDomain);

    omega.lambda = "3,1";
    omega.mu = "0.5,0.2";
    CHECK(run_cmd(omega) == kExitOk);
    omega.lambda.clear();
    omega.mu.clear();
    omega.tolerance = 1e-300;
    CHECK(run_cmd(omega) == kExitTolerance);

    RunConfig unknown;
    unknown.command = "nothing";
    CHECK(run_cmd(unknown) == kExitParse);
  }

  TEST_CASE("reports are deterministic for a fixed seed and CSV is a flat projection") {
    RunConfig c;
    c.command = "locality";
    c.builtin = "A2";
    c.seed = 3;
    std::string a, b;
    run_cmd(c, &a);
    run_cmd(c, &b);
    json ja = json::parse(a), jb = json::parse(b);
    ja.erase("runtime_s");
    jb.erase("runtime_s");
    CHECK(ja == jb);
    c.format = "csv";
    std::string csv;
    CHECK(run_cmd(c, &csv) == kExitOk);
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == static_cast<long>(ja["records"].size()) + 1);
  }
}
