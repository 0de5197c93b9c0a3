#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "cli_runner.hpp"
#include "fracdim2d/constructions.hpp"
#include "fracdim2d/io.hpp"

using json = nlohmann::json;
using namespace fracdim2d;

namespace {

void write_file(const std::string& name, const std::string& text) {
  std::ofstream(work_dir() / name, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("integrate reproduces the closed form at the far corner") {
  const CliRun r = run_cli(
      "integrate --op katugampola --fn constant:1 --rect 1,2,1,2 --alpha .5 --beta .5 --p 0 --q 0 --grid 33,33 "
      "--panels 128 --out integ.csv");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("certificate") != std::string::npos);
  const GridSamples g = io::load((work_dir() / "integ.csv").string());
  CHECK(std::fabs(g.at(32, 32) / (4 / M_PI) - 1) <= 1e-6);
}

TEST_CASE("parameter errors exit with 2 and a machine-readable body") {
  CliRun r = run_cli("integrate --fn constant:1 --rect 1,2,1,2 --beta .5");
  CHECK(r.status == 2);
  json e = json::parse(r.err);
  CHECK(e["code"] == "parameter");
  CHECK(e["parameter"] == "alpha");

  r = run_cli("integrate --fn constant:1 --rect 1,2,1,2 --alpha .5 --beta .5 --p -1");
  CHECK(r.status == 2);
  CHECK(json::parse(r.err)["parameter"] == "p");

  r = run_cli("integrate --op hadamard --fn constant:1 --rect 1,2,1,2 --alpha .5 --beta .5 --grid 3,3");
  CHECK(r.status == 0);

  r = run_cli("integrate --fn nope --rect 1,2,1,2 --alpha .5 --beta .5");
  CHECK(r.status == 2);
  CHECK(json::parse(r.err)["code"] == "catalog");

  r = run_cli("integrate --fn constant:1 --rect 0,1,1,2 --alpha .5 --beta .5");
  CHECK(r.status == 2);
  CHECK(json::parse(r.err)["parameter"] == "rect");

  r = run_cli("integrate --frobnicate");
  CHECK(r.status == 2);
  CHECK(json::parse(r.err)["code"] == "usage");

  r = run_cli("integrate --fn csv:missing.csv --rect 1,2,1,2 --alpha .5 --beta .5");
  CHECK(r.status == 2);
}

TEST_CASE("dimension") {
  CliRun r = run_cli("dimension --fn plane --rect 1,2,1,2 --grid 1025,1025 --out dim.json --csv dim.csv");
  REQUIRE(r.status == 0);
  const json fit = json::parse(slurp(work_dir() / "dim.json"));
  CHECK(fit["slope"].get<double>() >= 1.9);
  CHECK(fit["slope"].get<double>() <= 2.1);
  CHECK(slurp(work_dir() / "dim.csv").rfind("delta,count_lower,count_upper\n", 0) == 0);

  write_file("counts.csv", "delta,count\n0.5,4\n0.25,16\n0.125,64\n0.0625,256\n");
  r = run_cli("dimension --counts-from counts.csv");
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["slope"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));

  r = run_cli("dimension --fn plane --rect 1,2,1,2 --grid 9,9 --deltas 0.25,0.125,0.05");
  CHECK(r.status == 3);
  CHECK(json::parse(r.err)["code"] == "resolution");

  r = run_cli("dimension --fn plane --rect 1,2,1,2 --grid 33,33 --deltas 0.25,0.125,0.0625 --oracle");
  REQUIRE(r.status == 0);
  for (const auto& p : json::parse(r.out)["points"]) {
    CHECK(p["n_lower"].get<long>() <= p["oracle"].get<long>());
    CHECK(p["oracle"].get<long>() <= p["n_upper"].get<long>());
  }

  r = run_cli("dimension --fn rational-indicator --rect 1,2,1,2");
  CHECK(r.status == 2);
}

TEST_CASE("variation") {
  CliRun r = run_cli("variation --fn constant:1 --rect 1,2,1,2 --grid 9,9");
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["value"].get<double>() == 0.0);

  write_file("cross.csv", "x,y,value\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n");
  r = run_cli("variation --fn csv:cross.csv");
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["value"].get<double>() == 2.0);

  r = run_cli("variation --fn t-phi-1 --levels 16,32,64,128,256");
  REQUIRE(r.status == 0);
  const json t = json::parse(r.out);
  CHECK(t["strictly_increasing"].get<bool>());
  CHECK(t["log_slope"].get<double>() > 0);
}

TEST_CASE("construct") {
  CliRun r = run_cli("construct --fn paper-phi-1 --grid 11,21 --out phi.csv");
  REQUIRE(r.status == 0);
  const GridSamples g = io::load((work_dir() / "phi.csv").string());
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t j = 0; j < 21; ++j) {
      const double x = g.spec().x(i), y = g.spec().y(j);
      CHECK(g.at(i, j) == x * (x - 0.5) * std::sin(y));
    }

  r = run_cli("construct --fn t-phi-1 --grid 33,17 --out t.csv");
  REQUIRE(r.status == 0);
  const GridSamples t = io::load((work_dir() / "t.csv").string());
  const auto phi = catalog("paper-phi-1");
  for (std::size_t i = 0; i <= 16; ++i)
    for (std::size_t j = 0; j < 17; ++j) CHECK(t.at(i, j) == (*phi)(t.spec().x(i), t.spec().y(j)));

  r = run_cli("construct --fn csv:t.csv --grid 33,17 --out t2.csv");
  REQUIRE(r.status == 0);
  CHECK(slurp(work_dir() / "t.csv") == slurp(work_dir() / "t2.csv"));

  r = run_cli("construct --phi paper-phi-2 --depth 30 --grid 9,9");
  CHECK(r.status == 0);
  r = run_cli("construct --phi plane --grid 9,9");
  CHECK(r.status == 2);
  CHECK(json::parse(r.err)["parameter"] == "phi");
}

TEST_CASE("verify suites") {
  CliRun r = run_cli("verify semigroup --fn constant:1");
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["pass"].get<bool>());
  r = run_cli("verify separable --g constant:1");
  CHECK(r.status == 0);
  r = run_cli("verify special-cases --fn plane --out sc.json");
  CHECK(r.status == 0);
  r = run_cli("verify boundedness --fn product --fn paper-phi-1");
  CHECK(r.status == 0);
  r = run_cli("verify bv-preservation --fn plane --levels 32,64");
  CHECK(r.status == 0);
  r = run_cli("verify nonsense");
  CHECK(r.status == 2);
  // A deliberately unattainable tolerance surfaces as a verification failure.
  r = run_cli("verify semigroup --fn plane --panels 4 --grid 5,5");
  CHECK(r.status == 4);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const std::string cmds[] = {
      "integrate --fn weierstrass --rect 1,2,1,2 --alpha .3 --beta .7 --p .5 --grid 17,17 --panels 32 --out a.csv",
      "construct --fn t-phi-2 --grid 65,65 --out a.csv",
  };
  for (const auto& c : cmds) {
    REQUIRE(run_cli(c, "FRACDIM2D_THREADS=1").status == 0);
    const std::string one = slurp(work_dir() / "a.csv");
    REQUIRE(run_cli(c, "FRACDIM2D_THREADS=0").status == 0);
    CHECK(one == slurp(work_dir() / "a.csv"));
  }
}
