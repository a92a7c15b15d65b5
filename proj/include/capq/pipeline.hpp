#pragma once

#include <optional>
#include <vector>

#include "capq/bounds.hpp"
#include "capq/capacitor.hpp"
#include "capq/equipotential.hpp"
#include "capq/quasicircle.hpp"
#include "capq/solver.hpp"

namespace capq {

struct PipelineOptions {
  SolveOptions solve;
  std::size_t max_turning_samples = 1024;  // decimation is chosen to stay below this
};

struct LevelRecord {
  double level = 0.0;
  LevelCurve curve;
  JordanDiagnostics jordan;
  TurningReport turning;  // empirical indicator; no inequality links C to K
  double k_level = 1.0;
};

struct LevelComparison {
  double a = 0.0;
  double b = 0.0;
  double K = 1.0;
};

/// Bound from a doubly connected subdomain D around the curve of interest.
/// The capacity of D is a lower bound for the supremum over all such
/// subdomains, so K is an upper-bound certificate, not the optimum.
struct HomotopyCertificate {
  double subdomain_capacity = 0.0;
  double K = 1.0;
};

struct AnalysisReport {
  CapacitorSpec spec;
  double capacity = 0.0;
  double energy_capacity = 0.0;
  double dirichlet_energy = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool unreliable = false;
  double tolerance = 0.0;
  std::vector<LevelRecord> levels;  // strictly increasing in level
  std::vector<BoundReport> bounds;
  std::vector<LevelComparison> comparisons;
  std::optional<HomotopyCertificate> homotopy;
  Beta0Check beta0;

  const LevelRecord* find_level(double a) const;
};

/// Extracts, validates and measures each level of a solved field. Levels are
/// sorted, duplicates dropped, and processed concurrently.
AnalysisReport analyze_field(const CapacitorSpec& spec, const PotentialField& field,
                             std::vector<double> levels, const PipelineOptions& options = {});

/// validate -> rasterize -> solve -> analyze. Errors are rethrown with the
/// stage that raised them.
AnalysisReport run_pipeline(const CapacitorSpec& spec, std::vector<double> levels,
                            const PipelineOptions& options = {});

/// k_between_levels(a, b), recorded in the report. Throws MissingLevel if
/// either level was not analysed.
double compare_levels(AnalysisReport& report, double a, double b);

/// Solves the subdomain capacitor and attaches the resulting certificate.
HomotopyCertificate homotopy_certificate(const CapacitorSpec& subdomain,
                                         const SolveOptions& options = {});

}  // namespace capq
