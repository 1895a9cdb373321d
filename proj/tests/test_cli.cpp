#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isogeo/cli.hpp"

using namespace isogeo;
using namespace isogeo::cli;

namespace {

const std::string kSphere =
    R"({"space":"i3","surface":{"kind":"graph","f":"(u^2+v^2)/4 - 1"},"domain":[-1,1,-1,1]})";
const std::string kPseudoGraph =
    R"({"space":"ip3","surface":{"kind":"graph","f":"(u^2-v^2)/4"},"domain":[-1,1,0,3]})";
const std::string kCylinder =
    R"({"space":"i3","surface":{"kind":"builtin","name":"cylindrical_sphere"}})";

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "isogeo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string spec_error(const std::string& json) {
  try {
    parse_spec(json);
  } catch (const SpecError& e) {
    return e.what();
  }
  FAIL("expected a SpecError for " << json);
  return {};
}

}  // namespace

TEST_CASE("spec parsing") {
  const LoadedSurface s = parse_spec(kSphere);
  CHECK(s.patch.kind() == SpaceKind::SimplyIsotropic);
  CHECK_FALSE(s.entry.has_value());
  CHECK(s.patch.domain().u0 == -1);

  const LoadedSurface b = parse_spec(
      R"({"space":"ip3","surface":{"kind":"builtin","name":"helicoid","params":{"c":2}}})");
  REQUIRE(b.entry.has_value());
  CHECK(b.entry->id == "helicoid");
  CHECK(b.patch.domain().u0 == 3);

  const LoadedSurface p = parse_spec(
      R"({"space":"i3","surface":{"kind":"parametric","x":"u","y":"v","z":"u*v"},"domain":[0,1,0,1]})");
  CHECK(p.patch.form() == SurfacePatch::Form::Parametric);

  CHECK(spec_error("{") .find("invalid JSON") != std::string::npos);
  CHECK(spec_error(R"({"space":"i4","surface":{"kind":"graph","f":"u"},"domain":[0,1,0,1]})")
            .find("space") != std::string::npos);
  CHECK(spec_error(R"({"space":"i3","surface":{"kind":"graph","f":"u"}})").find("domain") !=
        std::string::npos);
  CHECK(spec_error(R"({"space":"i3","surface":{"kind":"graph","f":"u"},"domain":[1,0,0,1]})")
            .find("u0 < u1") != std::string::npos);
  CHECK(spec_error(R"({"space":"i3","surface":{"kind":"graph","f":"u+"},"domain":[0,1,0,1]})")
            .find("surface.f") != std::string::npos);
  CHECK(spec_error(R"({"space":"i3","surface":{"kind":"builtin","name":"torus"}})")
            .find("unknown") != std::string::npos);
  CHECK(spec_error(R"({"space":"i3","surface":{"kind":"cone"}})").find("surface.kind") !=
        std::string::npos);
}

TEST_CASE("number formatting and grids") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2) == "-2");
  CHECK(std::stod(format_number(1.0 / 3)) == 1.0 / 3);
  CHECK(parse_grid("3x4") == std::pair<int, int>{3, 4});
  CHECK_THROWS_AS(parse_grid("3x0"), SpecError);
  CHECK_THROWS_AS(parse_grid("3by4"), SpecError);
  CHECK_THROWS_AS(parse_grid("3x4x5"), SpecError);
}

TEST_CASE("curvature command") {
  const Result r = run_cli({"curvature", "--spec", kSphere, "--grid", "3x3"});
  CHECK(r.code == kOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 10);
  CHECK(ls[0] == "u,v,x,y,z,K,H,disc,class,xi1,xi2,xi3");
  CHECK(ls[5] == "0,0,0,0,-1,0.25,0.5,0,umbilic,0,0,0.5");

  const Result c = run_cli({"curvature", "--spec", kCylinder, "--grid", "2x2"});
  CHECK(c.code == kOk);
  CHECK(lines(c.out)[1].find(",,,,,,inadmissible,,,") != std::string::npos);
}

TEST_CASE("geodesic command") {
  const Result r = run_cli({"geodesic", "--spec", kSphere, "--start", "0,0", "--velocity", "0.5,0",
                            "--t-end", "0.1", "--step", "0.05"});
  CHECK(r.code == kOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "t,u,v,du,dv,x,y,z,parallel_residual");
  CHECK(ls[1].rfind("0,0,0,0.5,0,", 0) == 0);

  const Result stop = run_cli({"geodesic", "--spec", kSphere, "--start", "0,0", "--velocity", "1,0",
                               "--t-end", "5", "--step", "0.01"});
  CHECK(stop.code == kOk);
  CHECK(stop.err.find("stopped") != std::string::npos);

  CHECK(run_cli({"geodesic", "--spec", kPseudoGraph, "--start", "0,2", "--velocity", "1,0"}).code ==
        kGeometryError);
  CHECK(run_cli({"geodesic", "--spec", kSphere, "--start", "5,0", "--velocity", "1,0"}).code ==
        kGeometryError);
  CHECK(run_cli({"geodesic", "--spec", kSphere, "--start", "0,0", "--velocity", "1,0", "--step",
                 "0"}).code == kGeometryError);
  CHECK(run_cli({"geodesic", "--spec", kSphere, "--start", "0;0", "--velocity", "1,0"}).code ==
        kSpecError);
  CHECK(run_cli({"geodesic", "--spec", kSphere, "--type", "x", "--start", "0,0", "--velocity",
                 "1,0"}).code == kSpecError);
  CHECK(run_cli({"geodesic", "--spec", kPseudoGraph, "--type", "lc", "--start", "0,2",
                 "--velocity", "1,0", "--t-end", "0.5"}).code == kOk);
}

TEST_CASE("sample command") {
  const Result obj = run_cli({"sample", "--spec", kSphere, "--grid", "2x3"});
  CHECK(obj.code == kOk);
  const auto ls = lines(obj.out);
  REQUIRE(ls.size() == 6 + 4);
  CHECK(ls[0] == "v -1 -1 -0.5");
  CHECK(ls[6] == "f 1 4 5");
  CHECK(ls[7] == "f 1 5 2");

  const Result csv = run_cli({"sample", "--spec", kSphere, "--grid", "2x2", "--format", "csv"});
  CHECK(lines(csv.out).size() == 5);
  CHECK(lines(csv.out)[0] == "u,v,x,y,z");
}

TEST_CASE("verify command") {
  const Result r = run_cli({"verify", "--spec", kSphere, "--samples", "10", "--seed", "3"});
  CHECK(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["seed"] == 3);
  CHECK(j["overall"] == "pass");
  CHECK_FALSE(j["checks"].empty());

  const Result tight =
      run_cli({"verify", "--spec", kSphere, "--suite", "egregium", "--tol", "1e-300"});
  CHECK(tight.code == kVerifyFailed);

  // Naming the minimal suite asserts H = 0; the sphere is not minimal.
  CHECK(run_cli({"verify", "--spec", kSphere, "--suite", "minimal"}).code == kVerifyFailed);
  const std::string saddle =
      R"({"space":"i3","surface":{"kind":"graph","f":"u^2-v^2"},"domain":[-1,1,-1,1]})";
  CHECK(run_cli({"verify", "--spec", saddle, "--suite", "minimal"}).code == kOk);

  const Result skip = run_cli({"verify", "--spec", kCylinder, "--suite", "flatness"});
  CHECK(skip.code == kOk);
  CHECK(skip.out.find("skipped: surface is not admissible") != std::string::npos);

  CHECK(run_cli({"verify", "--suite", "bogus", "--all-catalog"}).code == kSpecError);
  CHECK(run_cli({"verify"}).code == kSpecError);
  CHECK(run_cli({"verify", "--all-catalog", "--spec", kSphere}).code == kSpecError);
}

TEST_CASE("verify reports are deterministic") {
  const std::vector<std::string> args{"verify", "--all-catalog", "--samples", "20", "--seed", "99"};
  const Result a = run_cli(args), b = run_cli(args);
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  const Result c = run_cli({"verify", "--all-catalog", "--samples", "20", "--seed", "100"});
  CHECK(c.out != a.out);
}

TEST_CASE("errors and exit codes") {
  CHECK(run_cli({}).code == kSpecError);
  CHECK(run_cli({"frobnicate"}).code == kSpecError);
  CHECK(run_cli({"curvature", "--spec", "/nonexistent/spec.json"}).code == kIoError);
  CHECK(run_cli({"curvature", "--spec", kSphere, "-o", "/nonexistent/dir/out.csv"}).code == kIoError);
  CHECK(run_cli({"curvature", "--spec", "{\"space\":1}"}).code == kSpecError);
  CHECK(run_cli({"curvature", "--spec", kSphere, "--grid", "0x1"}).code == kSpecError);
  CHECK(run_cli({"--help"}).code == kOk);
}
