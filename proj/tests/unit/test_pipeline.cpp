#include <cmath>

#include "doctest.h"

#include "capq/errors.hpp"
#include "capq/parallel.hpp"
#include "capq/pipeline.hpp"

using namespace capq;

namespace {

CapacitorSpec annulus(int n) {
  CapacitorSpec s;
  s.shape_E = {Shape::disc_complement({0, 0}, 2.0)};
  s.shape_F = {Shape::disc({0, 0}, 0.5)};
  s.grid_bounds = {-2.2, -2.2, 2.2, 2.2};
  s.resolution = n;
  return s;
}

const AnalysisReport& annulus_report() {
  static const AnalysisReport r = run_pipeline(annulus(256), {0.5, -0.5, 0.0, 0.5});
  return r;
}

}  // namespace

TEST_CASE("annulus report: sorted unique levels and bounds") {
  const AnalysisReport& r = annulus_report();
  REQUIRE(r.levels.size() == 3);
  CHECK(r.levels[0].level == -0.5);
  CHECK(r.levels[2].level == 0.5);
  CHECK(r.capacity == doctest::Approx(std::log(4.0)).epsilon(0.03));
  // zero-level bound plus one per level
  REQUIRE(r.bounds.size() == 4);
  CHECK(r.bounds[0].kind == BoundKind::ZeroLevel);
  CHECK(r.bounds[0].K == doctest::Approx(1 + 8 * kBeta0 / r.capacity));
  CHECK(r.bounds[0].K == doctest::Approx(15.42).epsilon(0.03));
  for (const auto& rec : r.levels) {
    CHECK(rec.jordan.closed);
    CHECK(rec.jordan.simple);
    CHECK(rec.jordan.winding == 1);
    CHECK(rec.turning.constant >= 1.0);
    CHECK(rec.turning.constant < 1.05);
    CHECK(rec.turning.samples <= 1024);
    CHECK(rec.k_level == doctest::Approx(k_level(r.capacity, rec.level)));
  }
  CHECK(r.find_level(0.0) != nullptr);
  CHECK(r.find_level(0.1) == nullptr);
}

TEST_CASE("comparisons are recorded; missing levels are reported") {
  AnalysisReport r = annulus_report();
  CHECK(compare_levels(r, -0.5, 0.5) == doctest::Approx(3.0));
  CHECK(r.comparisons.size() == 1);
  try {
    compare_levels(r, 0.0, 0.25);
    FAIL("expected MissingLevel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingLevel);
  }
}

TEST_CASE("an empty level list still yields the zero-level bound") {
  const AnalysisReport r = run_pipeline(annulus(64), {});
  CHECK(r.levels.empty());
  CHECK(r.bounds.size() == 1);
}

TEST_CASE("two discs: the 0.5 level is a closed curve around F") {
  CapacitorSpec s;
  s.shape_E = {Shape::disc({-1.0, 0.0}, 0.5)};
  s.shape_F = {Shape::disc({1.0, 0.0}, 0.5)};
  s.grid_bounds = {-6, -6, 6, 6};
  s.resolution = 256;
  const AnalysisReport r = run_pipeline(s, {0.5});
  REQUIRE(r.levels.size() == 1);
  const auto& c = r.levels[0].curve;
  double cx = 0.0;
  for (Point p : c.vertices()) cx += p.x;
  CHECK(cx / c.vertices().size() < 0.0);  // the +0.5 level hugs E, which is at u = +1
  CHECK(r.levels[0].jordan.winding == 1);
}

TEST_CASE("errors carry the stage that raised them") {
  CapacitorSpec bad = annulus(64);
  bad.shape_F = {Shape::disc({0, 0}, -1)};
  try {
    run_pipeline(bad, {});
    FAIL("expected DegenerateShape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateShape);
    CHECK(e.stage() == "validate");
    CHECK(std::string(e.what()).rfind("DegenerateShape: ", 0) == 0);
    CHECK(e.message().find("DegenerateShape") == std::string::npos);
  }
  try {
    run_pipeline(annulus(64), {1.5});
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
    CHECK(e.stage() == "levels");
  }
}

TEST_CASE("the homotopy certificate uses the subdomain capacity") {
  CapacitorSpec sub;
  sub.shape_E = {Shape::disc_complement({0, 0}, 1.6)};
  sub.shape_F = {Shape::disc({0, 0}, 0.6)};
  sub.grid_bounds = {-2, -2, 2, 2};
  sub.resolution = 128;
  const HomotopyCertificate h = homotopy_certificate(sub);
  CHECK(h.subdomain_capacity == doctest::Approx(std::log(1.6 / 0.6)).epsilon(0.05));
  CHECK(h.K == doctest::Approx(k_homotopy(h.subdomain_capacity)));
}

TEST_CASE("results do not depend on the thread cap") {
  const int saved = max_threads();
  set_max_threads(1);
  const AnalysisReport a = run_pipeline(annulus(128), {-0.3, 0.3});
  set_max_threads(4);
  const AnalysisReport b = run_pipeline(annulus(128), {-0.3, 0.3});
  set_max_threads(saved);
  CHECK(a.capacity == b.capacity);
  CHECK(a.levels[1].curve.points == b.levels[1].curve.points);
  CHECK(a.levels[0].turning.constant == b.levels[0].turning.constant);
}
