#include "capq/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <string>

#include "capq/errors.hpp"
#include "capq/parallel.hpp"

namespace capq {

namespace {

template <typename F>
auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.code(), e.message(), stage);
  }
}

std::string level_stage(double a) {
  std::ostringstream os;
  os << "level " << a;
  return os.str();
}

LevelRecord analyze_level(const PotentialField& field, double a, std::size_t max_samples) {
  LevelRecord rec;
  rec.level = a;
  rec.curve = in_stage(level_stage(a) + ": extract", [&] { return extract_level(field, a); });
  rec.jordan = validate_jordan(rec.curve);
  const std::size_t n = rec.curve.vertices().size();
  const std::size_t cap = std::max<std::size_t>(max_samples, 4);
  const std::size_t decimation = std::max<std::size_t>(1, (n + cap - 1) / cap);
  rec.turning = in_stage(level_stage(a) + ": turning",
                         [&] { return turning_constant(rec.curve, decimation); });
  rec.k_level = in_stage(level_stage(a) + ": bounds",
                         [&] { return k_level(field.capacity, a); });
  return rec;
}

}  // namespace

const LevelRecord* AnalysisReport::find_level(double a) const {
  for (const auto& rec : levels) {
    if (rec.level == a) return &rec;
  }
  return nullptr;
}

AnalysisReport analyze_field(const CapacitorSpec& spec, const PotentialField& field,
                             std::vector<double> levels, const PipelineOptions& options) {
  for (double a : levels) {
    if (!(a > -1.0 && a < 1.0)) {
      throw Error(ErrorCode::DomainError,
                  "levels must lie strictly between -1 and 1, got " + std::to_string(a), "levels");
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  AnalysisReport rep;
  rep.spec = spec;
  rep.capacity = field.capacity;
  rep.energy_capacity = field.energy_capacity;
  rep.dirichlet_energy = field.dirichlet_energy;
  rep.residual = field.residual;
  rep.iterations = field.iterations;
  rep.unreliable = field.unreliable;
  rep.tolerance = options.solve.tolerance;
  rep.beta0 = beta0_check();

  const auto policy = max_threads() > 1 ? std::launch::async : std::launch::deferred;
  std::vector<std::future<LevelRecord>> jobs;
  jobs.reserve(levels.size());
  for (double a : levels) {
    jobs.push_back(std::async(policy, analyze_level, std::cref(field), a,
                              options.max_turning_samples));
  }
  // Collect everything before rethrowing so no task outlives the field.
  std::exception_ptr failure;
  for (auto& job : jobs) {
    try {
      rep.levels.push_back(job.get());
    } catch (...) {
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  rep.bounds.push_back(in_stage("bounds", [&] {
    return evaluate_bound(BoundKind::ZeroLevel, {{"cap", field.capacity}});
  }));
  for (const auto& rec : rep.levels) {
    rep.bounds.push_back(in_stage("bounds", [&] {
      return evaluate_bound(BoundKind::Level, {{"cap", field.capacity}, {"a", rec.level}});
    }));
  }
  return rep;
}

AnalysisReport run_pipeline(const CapacitorSpec& spec, std::vector<double> levels,
                            const PipelineOptions& options) {
  const CapacitorSpec valid = in_stage("validate", [&] { return validate_spec(spec); });
  GridMask mask = in_stage("rasterize", [&] { return rasterize(valid); });
  const PotentialField field =
      in_stage("solve", [&] { return solve_potential(std::move(mask), options.solve); });
  return analyze_field(valid, field, std::move(levels), options);
}

double compare_levels(AnalysisReport& report, double a, double b) {
  for (double x : {a, b}) {
    if (report.find_level(x) == nullptr) {
      throw Error(ErrorCode::MissingLevel,
                  "level " + std::to_string(x) + " is not in the report", "compare");
    }
  }
  const double K = in_stage("compare", [&] { return k_between_levels(a, b); });
  report.comparisons.push_back({a, b, K});
  return K;
}

HomotopyCertificate homotopy_certificate(const CapacitorSpec& subdomain,
                                         const SolveOptions& options) {
  const CapacitorSpec valid = in_stage("validate", [&] { return validate_spec(subdomain); });
  GridMask mask = in_stage("rasterize", [&] { return rasterize(valid); });
  const PotentialField field =
      in_stage("solve", [&] { return solve_potential(std::move(mask), options); });
  HomotopyCertificate cert;
  cert.subdomain_capacity = field.capacity;
  cert.K = in_stage("bounds", [&] { return k_homotopy(field.capacity); });
  return cert;
}

}  // namespace capq
