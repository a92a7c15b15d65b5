#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "capq/errors.hpp"
#include "capq/io.hpp"
#include "cli.hpp"

using namespace capq;
using namespace capq::cli;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const char* name) {
  auto p = std::filesystem::temp_directory_path() / ("capq_test_cli_" + std::string(name));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::filesystem::path annulus_spec(const std::filesystem::path& dir) {
  CapacitorSpec s;
  s.shape_E = {Shape::disc_complement({0, 0}, 2.0)};
  s.shape_F = {Shape::disc({0, 0}, 0.5)};
  s.grid_bounds = {-2.2, -2.2, 2.2, 2.2};
  s.resolution = 64;
  write_text_file(dir / "annulus.json", serialize_spec(s));
  return dir / "annulus.json";
}

}  // namespace

TEST_CASE("parse: analyze with levels, compare and flags") {
  const RunConfig c = parse_args({"analyze", "--input", "a.json", "--levels", "-0.5,0,0.25",
                                  "--compare", "-0.5:0.25", "--svg", "--resolution", "256"});
  CHECK(c.subcommand == Subcommand::Analyze);
  CHECK(c.input == "a.json");
  CHECK(c.levels == std::vector<double>{-0.5, 0.0, 0.25});
  REQUIRE(c.compare.size() == 1);
  CHECK(c.compare[0] == std::pair{-0.5, 0.25});
  CHECK(c.svg);
  CHECK_FALSE(c.csv);
  CHECK(c.resolution == 256);
}

TEST_CASE("parse: bounds and collar") {
  const RunConfig b = parse_args({"bounds", "--kind", "k_level", "--cap", "1.2", "--a", "0.5"});
  CHECK(b.subcommand == Subcommand::Bounds);
  CHECK(b.bound == "k_level");
  CHECK(b.bound_inputs == std::map<std::string, double>{{"a", 0.5}, {"cap", 1.2}});
  const RunConfig c = parse_args({"collar", "--length", "3.14"});
  CHECK(c.length.value() == doctest::Approx(3.14));
  CHECK_FALSE(c.radius.has_value());
}

TEST_CASE("parse: usage errors") {
  auto code = [](std::vector<std::string> a) {
    try {
      parse_args(a);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code({}) == ErrorCode::UsageError);
  CHECK(code({"frobnicate"}) == ErrorCode::UsageError);
  CHECK(code({"solve"}) == ErrorCode::UsageError);
  CHECK(code({"solve", "-i", "x.json", "--resolution", "100"}) == ErrorCode::UsageError);
  CHECK(code({"levels", "-i", "x.json", "--levels", "0.5,1.2"}) == ErrorCode::UsageError);
  CHECK(code({"levels", "-i", "x.json", "--levels", "0.5,abc"}) == ErrorCode::UsageError);
  CHECK(code({"analyze", "-i", "x.json", "--compare", "0.5"}) == ErrorCode::UsageError);
  CHECK(code({"bounds"}) == ErrorCode::UsageError);
  CHECK(code({"collar"}) == ErrorCode::UsageError);
  CHECK(code({"collar", "--length", "1", "--radius", "0.5"}) == ErrorCode::UsageError);
  CHECK(code({"chain", "--r", "1.5"}) == ErrorCode::UsageError);
}

TEST_CASE("help exits cleanly") {
  const Outcome o = invoke({"--help"});
  CHECK(o.code == 0);
  CHECK(o.out.find("analyze") != std::string::npos);
}

TEST_CASE("exit codes: usage 2, I/O 4, numerical 3") {
  Outcome o = invoke({"solve"});
  CHECK(o.code == 2);
  CHECK(o.err.rfind("capq: UsageError: ", 0) == 0);
  CHECK(invoke({"solve", "-i", "/nonexistent/spec.json"}).code == 4);
  CHECK(invoke({"bounds", "--kind", "k_geodesic_small", "--ell", "2"}).code == 2);
}

TEST_CASE("end to end: bounds, collar, chain and selftest") {
  Outcome o = invoke({"bounds", "--kind", "k_zero_level", "--cap", "2"});
  CHECK(o.code == 0);
  CHECK(json::parse(o.out)["K"].get<double>() == doctest::Approx(1 + 4 * kBeta0));
  o = invoke({"collar", "--radius", "0.5"});
  CHECK(o.code == 0);
  CHECK(json::parse(o.out)["r"].get<double>() == doctest::Approx(0.5));
  const auto dir = scratch("chain");
  o = invoke({"chain", "--r", "0.6", "--circles", "3", "--samples", "32", "-o", dir.string()});
  CHECK(o.code == 0);
  CHECK(std::filesystem::exists(dir / "chain.svg"));
  CHECK(json::parse(o.out)["boundary_residual"]["inner"].get<double>() < 1e-8);
  o = invoke({"selftest"});
  CHECK(o.code == 0);
  CHECK(o.out.find("FAIL") == std::string::npos);
}

TEST_CASE("end to end: analyze writes a deterministic report") {
  const auto dir = scratch("analyze");
  const auto spec = annulus_spec(dir);
  const std::vector<std::string> args{"analyze", "-i", spec.string(), "-o", (dir / "out").string(),
                                      "--levels", "-0.5,0.5", "--compare", "-0.5:0.5", "--svg",
                                      "--csv"};
  const Outcome first = invoke(args);
  REQUIRE(first.code == 0);
  const std::string report = read_text_file(dir / "out" / "report.json");
  CHECK(std::filesystem::exists(dir / "out" / "report.svg"));
  CHECK(std::filesystem::exists(dir / "out" / "level_01.csv"));
  CHECK(invoke(args).code == 0);
  CHECK(read_text_file(dir / "out" / "report.json") == report);
  const json j = json::parse(report);
  CHECK(j["comparisons"][0]["K"].get<double>() == doctest::Approx(3.0));

  const Outcome lv = invoke({"levels", "-i", spec.string(), "--levels", "0"});
  CHECK(lv.code == 0);
  CHECK(json::parse(lv.out).size() == 1);
  const Outcome sv = invoke({"solve", "-i", spec.string(), "-o", (dir / "solve").string()});
  CHECK(sv.code == 0);
  CHECK(std::filesystem::exists(dir / "solve" / "field.bin"));
  CHECK(invoke({"analyze", "-i", spec.string(), "--levels", "0", "--compare", "0:0.5"}).code == 3);
}
