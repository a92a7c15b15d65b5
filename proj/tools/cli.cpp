#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "capq/capacitor.hpp"
#include "capq/conformal_chain.hpp"
#include "capq/errors.hpp"
#include "capq/hyperbolic.hpp"
#include "capq/io.hpp"
#include "capq/pipeline.hpp"
#include "capq/selftest.hpp"
#include "capq/solver.hpp"

namespace capq::cli {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void usage(const std::string& msg, const std::string& help = {}) {
  throw Error(ErrorCode::UsageError, help.empty() ? msg : msg + "\n\n" + help);
}

bool power_of_two_in_range(int n) { return n >= 64 && n <= 8192 && (n & (n - 1)) == 0; }

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      usage(what + ": '" + item + "' is not a number");
    }
    if (used != item.size()) usage(what + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) usage(what + " needs at least one value");
  return out;
}

CapacitorSpec load_spec(const RunConfig& cfg) {
  CapacitorSpec spec = parse_spec(read_text_file(cfg.input));
  if (cfg.resolution > 0) spec.resolution = cfg.resolution;
  if (!power_of_two_in_range(spec.resolution)) {
    usage("resolution must be a power of two in [64, 8192], got " +
          std::to_string(spec.resolution));
  }
  return spec;
}

void prepare_output(const RunConfig& cfg) {
  if (cfg.output_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
    throw Error(ErrorCode::IoError, "cannot create output directory " + cfg.output_dir.string());
  }
}

std::string level_tag(std::size_t index) {
  std::ostringstream os;
  os << "level_" << std::setw(2) << std::setfill('0') << index;
  return os.str();
}

PotentialField solve_spec(const CapacitorSpec& spec, double tol) {
  SolveOptions opts;
  opts.tolerance = tol;
  return solve_potential(rasterize(validate_spec(spec)), opts);
}

int run_solve(const RunConfig& cfg, std::ostream& out) {
  const CapacitorSpec spec = load_spec(cfg);
  const PotentialField field = solve_spec(spec, cfg.tolerance);
  if (!cfg.output_dir.empty()) write_field(field, cfg.output_dir / "field");
  out << field_header_json(field, cfg.output_dir.empty() ? "" : "field.bin");
  return 0;
}

int run_levels(const RunConfig& cfg, std::ostream& out) {
  const CapacitorSpec spec = load_spec(cfg);
  const PotentialField field = solve_spec(spec, cfg.tolerance);
  std::vector<double> levels = cfg.levels;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  json arr = json::array();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const LevelCurve curve = extract_level(field, levels[i]);
    if (!cfg.output_dir.empty()) {
      write_text_file(cfg.output_dir / (level_tag(i) + ".csv"), curve_csv(curve));
      write_text_file(cfg.output_dir / (level_tag(i) + ".json"), curve_json(curve));
    }
    arr.push_back(json::parse(curve_json(curve)));
  }
  out << arr.dump(2) << "\n";
  return 0;
}

int run_analyze(const RunConfig& cfg, std::ostream& out) {
  const CapacitorSpec spec = load_spec(cfg);
  PipelineOptions opts;
  opts.solve.tolerance = cfg.tolerance;
  AnalysisReport report = run_pipeline(spec, cfg.levels, opts);
  for (const auto& [a, b] : cfg.compare) compare_levels(report, a, b);
  if (!cfg.homotopy_input.empty()) {
    CapacitorSpec sub = parse_spec(read_text_file(cfg.homotopy_input));
    report.homotopy = homotopy_certificate(sub, opts.solve);
  }
  const std::string text = report_json(report);
  if (!cfg.output_dir.empty()) {
    write_text_file(cfg.output_dir / "report.json", text);
    if (cfg.csv) {
      for (std::size_t i = 0; i < report.levels.size(); ++i) {
        write_text_file(cfg.output_dir / (level_tag(i) + ".csv"), curve_csv(report.levels[i].curve));
      }
    }
    if (cfg.svg) write_text_file(cfg.output_dir / "report.svg", report_svg(report));
  }
  out << text;
  return 0;
}

int run_bounds(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.input.empty()) {
    out << bounds_json(evaluate_bound_requests(read_text_file(cfg.input)));
    return 0;
  }
  const auto kind = parse_bound_kind(cfg.bound);
  if (!kind) {
    std::string names;
    for (BoundKind k : all_bound_kinds()) names += std::string(names.empty() ? "" : ", ") + std::string(to_string(k));
    usage("unknown bound '" + cfg.bound + "'; expected one of " + names);
  }
  out << bound_json(evaluate_bound(*kind, cfg.bound_inputs));
  return 0;
}

int run_collar(const RunConfig& cfg, std::ostream& out) {
  const CollarResult c = cfg.length ? collar(*cfg.length) : collar_from_radius(*cfg.radius);
  out << collar_json(c);
  return 0;
}

int run_chain(const RunConfig& cfg, std::ostream& out) {
  const MapChain chain = build_chain(cfg.chain_r);
  std::vector<double> radii;
  // Circles evenly spaced in log|z| strictly inside A(r, 1/r).
  const double L = std::log(1.0 / cfg.chain_r);
  for (int k = 1; k <= cfg.chain_circles; ++k) {
    radii.push_back(std::exp(-L + 2.0 * L * k / (cfg.chain_circles + 1)));
  }
  const auto curves = chain_curves(chain, radii, cfg.chain_samples);
  if (!cfg.output_dir.empty()) {
    write_text_file(cfg.output_dir / "chain.csv", chain_csv(curves));
    write_text_file(cfg.output_dir / "chain.svg", chain_svg(chain, curves, cfg.chain_half_width));
  }
  const ChainBoundaryCheck check = check_chain_boundary(chain, 256);
  json o = {{"r", chain.r},
            {"m", chain.m},
            {"K", chain.K},
            {"slit_half_length", chain.slit_half_length()},
            {"ray_gap", chain.ray_gap()},
            {"modulus", chain.modulus()},
            {"boundary_residual", {{"inner", check.inner_residual}, {"outer", check.outer_residual}}},
            {"circles", radii.size()}};
  out << o.dump(2) << "\n";
  return 0;
}

int run_selftest_cmd(std::ostream& out) {
  bool ok = true;
  for (const auto& r : run_selftest()) {
    const char* tag = r.passed ? "PASS" : (r.advisory ? "WARN" : "FAIL");
    out << tag << "  " << r.name << "  [" << r.detail << "]\n";
    if (!r.passed && !r.advisory) ok = false;
  }
  return ok ? 0 : 3;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Conformal capacity, equipotentials and distortion bounds", "capq"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string levels_text, compare_text;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", cfg.input, "Capacitor spec JSON");
    if (needs_input) in->required();
    sub->add_option("--output,-o", cfg.output_dir, "Output directory");
    sub->add_option("--resolution", cfg.resolution, "Cells per side (power of two, 64..8192)");
    sub->add_option("--tolerance", cfg.tolerance, "Relative residual tolerance");
  };

  auto* solve = app.add_subcommand("solve", "Solve the extremal potential and report the capacity");
  add_common(solve, true);
  auto* levels = app.add_subcommand("levels", "Extract equipotential curves");
  add_common(levels, true);
  levels->add_option("--levels", levels_text, "Comma-separated levels in (-1, 1)")->required();
  auto* analyze = app.add_subcommand("analyze", "Full analysis report");
  add_common(analyze, true);
  analyze->add_option("--levels", levels_text, "Comma-separated levels in (-1, 1)");
  analyze->add_option("--compare", compare_text, "Level pairs a:b, comma-separated");
  analyze->add_option("--homotopy", cfg.homotopy_input, "Spec of a doubly connected subdomain");
  analyze->add_flag("--svg", cfg.svg, "Write report.svg");
  analyze->add_flag("--csv", cfg.csv, "Write one CSV per level curve");

  auto* bounds = app.add_subcommand("bounds", "Evaluate a distortion bound");
  bounds->add_option("--input,-i", cfg.input, "Batch request JSON");
  bounds->add_option("--kind", cfg.bound, "Bound name, e.g. k_level");
  std::map<std::string, double> values;
  std::vector<std::pair<std::string, CLI::Option*>> value_opts;
  for (const char* name : {"cap", "a", "b", "r", "s", "t", "ell"}) {
    value_opts.emplace_back(name, bounds->add_option(std::string("--") + name, values[name],
                                                     std::string("Input '") + name + "'"));
  }

  auto* collar_cmd = app.add_subcommand("collar", "Collar of a closed geodesic");
  std::optional<double> length, radius;
  auto* len_opt = collar_cmd->add_option("--length", length, "Geodesic length ell");
  auto* rad_opt = collar_cmd->add_option("--radius", radius, "Annulus parameter r in (0, 1)");
  len_opt->excludes(rad_opt);

  auto* chain = app.add_subcommand("chain", "Images of circles under the five-stage map");
  chain->add_option("--r", cfg.chain_r, "Annulus parameter r in (0, 1)");
  chain->add_option("--circles", cfg.chain_circles, "Number of circles")->check(CLI::Range(1, 1000));
  chain->add_option("--samples", cfg.chain_samples, "Points per circle")->check(CLI::Range(8, 100000));
  chain->add_option("--half-width", cfg.chain_half_width, "Half-width of the SVG window");
  chain->add_option("--output,-o", cfg.output_dir, "Output directory");

  app.add_subcommand("selftest", "Run the identity suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.show_help = true;
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.show_help = true;
    cfg.help_text = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& e) {
    usage(e.what(), app.help());
  }

  if (solve->parsed()) cfg.subcommand = Subcommand::Solve;
  else if (levels->parsed()) cfg.subcommand = Subcommand::Levels;
  else if (analyze->parsed()) cfg.subcommand = Subcommand::Analyze;
  else if (bounds->parsed()) cfg.subcommand = Subcommand::Bounds;
  else if (collar_cmd->parsed()) cfg.subcommand = Subcommand::Collar;
  else if (chain->parsed()) cfg.subcommand = Subcommand::Chain;
  else cfg.subcommand = Subcommand::Selftest;

  if (cfg.resolution != 0 && !power_of_two_in_range(cfg.resolution)) {
    usage("--resolution must be a power of two in [64, 8192]");
  }
  if (!(cfg.tolerance > 0.0)) usage("--tolerance must be positive");
  if (!levels_text.empty()) {
    cfg.levels = parse_number_list(levels_text, "--levels");
    for (double a : cfg.levels) {
      if (!(a > -1.0 && a < 1.0)) usage("--levels must lie strictly between -1 and 1");
    }
  }
  if (!compare_text.empty()) {
    std::stringstream ss(compare_text);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) usage("--compare expects pairs a:b");
      const auto a = parse_number_list(pair.substr(0, colon), "--compare");
      const auto b = parse_number_list(pair.substr(colon + 1), "--compare");
      cfg.compare.emplace_back(a.front(), b.front());
    }
  }
  if (cfg.subcommand == Subcommand::Bounds) {
    for (const auto& [name, opt] : value_opts) {
      if (opt->count() > 0) cfg.bound_inputs[name] = values[name];
    }
    if (cfg.input.empty() && cfg.bound.empty()) usage("bounds needs --kind or --input", bounds->help());
    if (!cfg.input.empty() && (!cfg.bound.empty() || !cfg.bound_inputs.empty())) {
      usage("bounds takes either --input or --kind with values, not both");
    }
  }
  if (cfg.subcommand == Subcommand::Collar) {
    if (!length && !radius) usage("collar needs --length or --radius", collar_cmd->help());
    cfg.length = length;
    cfg.radius = radius;
  }
  if (cfg.subcommand == Subcommand::Chain && !(cfg.chain_r > 0.0 && cfg.chain_r < 1.0)) {
    usage("--r must lie in (0, 1)");
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  prepare_output(cfg);
  switch (cfg.subcommand) {
    case Subcommand::Solve: return run_solve(cfg, out);
    case Subcommand::Levels: return run_levels(cfg, out);
    case Subcommand::Analyze: return run_analyze(cfg, out);
    case Subcommand::Bounds: return run_bounds(cfg, out);
    case Subcommand::Collar: return run_collar(cfg, out);
    case Subcommand::Chain: return run_chain(cfg, out);
    case Subcommand::Selftest: return run_selftest_cmd(out);
  }
  return 0;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = parse_args(args);
    if (cfg.show_help) {
      out << cfg.help_text;
      return 0;
    }
    return run(cfg, out, err);
  } catch (const Error& e) {
    err << "capq: " << to_string(e.code());
    if (!e.stage().empty()) err << " (" << e.stage() << ")";
    err << ": " << e.message() << "\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "capq: IoError: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "capq: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace capq::cli
