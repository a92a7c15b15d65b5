#include "capq/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"

#include "capq/errors.hpp"

namespace capq {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void format_error(const std::string& msg) { throw Error(ErrorCode::FormatError, msg); }

void require_keys(const json& obj, const std::string& where, std::set<std::string> required,
                  std::set<std::string> optional = {}) {
  if (!obj.is_object()) format_error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key)) {
      format_error("unknown field '" + key + "' in " + where);
    }
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) format_error("missing field '" + key + "' in " + where);
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) format_error(where + " must be a number");
  return v.get<double>();
}

Point point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) format_error(where + " must be an [x, y] pair");
  return {number(v[0], where), number(v[1], where)};
}

json point_json(Point p) { return json::array({p.x, p.y}); }

std::string_view kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::Disc: return "disc";
    case ShapeKind::DiscComplement: return "disc_complement";
    case ShapeKind::Polygon: return "polygon";
    case ShapeKind::SlitSegment: return "slit";
  }
  return "disc";
}

Shape parse_shape(const json& obj, const std::string& where) {
  if (!obj.is_object() || !obj.contains("kind") || !obj["kind"].is_string()) {
    format_error(where + " needs a string 'kind'");
  }
  const std::string kind = obj["kind"].get<std::string>();
  if (kind == "disc" || kind == "disc_complement") {
    require_keys(obj, where, {"role", "kind", "center", "radius"});
    const Point c = point(obj["center"], where + ".center");
    const double r = number(obj["radius"], where + ".radius");
    return kind == "disc" ? Shape::disc(c, r) : Shape::disc_complement(c, r);
  }
  if (kind == "polygon") {
    require_keys(obj, where, {"role", "kind", "vertices"});
    if (!obj["vertices"].is_array()) format_error(where + ".vertices must be an array");
    std::vector<Point> v;
    for (const auto& p : obj["vertices"]) v.push_back(point(p, where + ".vertices"));
    return Shape::polygon(std::move(v));
  }
  if (kind == "slit") {
    require_keys(obj, where, {"role", "kind", "from", "to"}, {"half_width"});
    const double hw = obj.contains("half_width") ? number(obj["half_width"], where + ".half_width") : 0.0;
    return Shape::slit(point(obj["from"], where + ".from"), point(obj["to"], where + ".to"), hw);
  }
  format_error(where + " has unknown kind '" + kind + "'");
}

json shape_json(const Shape& s, const char* role) {
  json o;
  o["role"] = role;
  o["kind"] = kind_name(s.kind);
  switch (s.kind) {
    case ShapeKind::Disc:
    case ShapeKind::DiscComplement:
      o["center"] = point_json(s.center);
      o["radius"] = s.radius;
      break;
    case ShapeKind::Polygon: {
      json v = json::array();
      for (Point p : s.vertices) v.push_back(point_json(p));
      o["vertices"] = v;
      break;
    }
    case ShapeKind::SlitSegment:
      o["from"] = point_json(s.from);
      o["to"] = point_json(s.to);
      o["half_width"] = s.half_width;
      break;
  }
  return o;
}

json spec_to_json(const CapacitorSpec& spec) {
  json o;
  o["schema"] = kSpecSchema;
  json shapes = json::array();
  for (const auto& s : spec.shape_E) shapes.push_back(shape_json(s, "E"));
  for (const auto& s : spec.shape_F) shapes.push_back(shape_json(s, "F"));
  o["shapes"] = shapes;
  const Rect& b = spec.grid_bounds;
  o["grid"] = {{"bounds", {b.xmin, b.ymin, b.xmax, b.ymax}}, {"resolution", spec.resolution}};
  return o;
}

json curve_record(const LevelCurve& c) {
  return {{"level", c.level},
          {"points", c.points.size()},
          {"arc_length", c.arc_length},
          {"separating_components", c.separating_components},
          {"discarded_components", c.discarded_components}};
}

json bound_record(const BoundReport& b) {
  json inputs = json::object();
  for (const auto& [name, value] : b.inputs) inputs[name] = value;
  return {{"bound", to_string(b.kind)}, {"inputs", inputs}, {"K", b.K}, {"beta0", b.beta0}};
}

// Fixed-format numbers keep the SVG text identical across runs.
std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(9) << v;
  return os.str();
}

std::string polyline(const std::vector<Point>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ' ';
    s += fmt(pts[i].x) + "," + fmt(pts[i].y);
  }
  return s;
}

void svg_shape(std::ostringstream& os, const Shape& s, const Rect& b, double h, const char* fill) {
  switch (s.kind) {
    case ShapeKind::Disc:
      os << "  <circle cx=\"" << fmt(s.center.x) << "\" cy=\"" << fmt(s.center.y) << "\" r=\""
         << fmt(s.radius) << "\" fill=\"" << fill << "\"/>\n";
      break;
    case ShapeKind::DiscComplement: {
      const double r = s.radius, cx = s.center.x, cy = s.center.y;
      os << "  <path fill-rule=\"evenodd\" fill=\"" << fill << "\" d=\"M" << fmt(b.xmin) << ","
         << fmt(b.ymin) << " H" << fmt(b.xmax) << " V" << fmt(b.ymax) << " H" << fmt(b.xmin)
         << " Z M" << fmt(cx + r) << "," << fmt(cy) << " A" << fmt(r) << "," << fmt(r)
         << " 0 1 0 " << fmt(cx - r) << "," << fmt(cy) << " A" << fmt(r) << "," << fmt(r)
         << " 0 1 0 " << fmt(cx + r) << "," << fmt(cy) << " Z\"/>\n";
      break;
    }
    case ShapeKind::Polygon:
      os << "  <polygon points=\"" << polyline(s.vertices) << "\" fill=\"" << fill << "\"/>\n";
      break;
    case ShapeKind::SlitSegment:
      os << "  <line x1=\"" << fmt(s.from.x) << "\" y1=\"" << fmt(s.from.y) << "\" x2=\""
         << fmt(s.to.x) << "\" y2=\"" << fmt(s.to.y) << "\" stroke=\"" << fill
         << "\" stroke-width=\"" << fmt(std::max(2.0 * s.half_width, h)) << "\"/>\n";
      break;
  }
}

std::string svg_open(const Rect& b) {
  std::ostringstream os;
  // Flip y so the plane's orientation is preserved on screen.
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(b.xmin) << " "
     << fmt(-b.ymax) << " " << fmt(b.width()) << " " << fmt(b.height())
     << "\" width=\"800\" height=\"800\">\n"
     << " <g transform=\"scale(1,-1)\">\n";
  return os.str();
}

}  // namespace

CapacitorSpec parse_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    format_error(std::string("spec is not valid JSON: ") + e.what());
  }
  require_keys(doc, "spec", {"schema", "shapes", "grid"});
  if (!doc["schema"].is_string() || doc["schema"].get<std::string>() != kSpecSchema) {
    format_error("spec schema must be \"" + std::string(kSpecSchema) + "\"");
  }
  CapacitorSpec spec;
  if (!doc["shapes"].is_array()) format_error("spec.shapes must be an array");
  for (std::size_t i = 0; i < doc["shapes"].size(); ++i) {
    const json& s = doc["shapes"][i];
    const std::string where = "shapes[" + std::to_string(i) + "]";
    if (!s.is_object() || !s.contains("role") || !s["role"].is_string()) {
      format_error(where + " needs a string 'role'");
    }
    const std::string role = s["role"].get<std::string>();
    if (role != "E" && role != "F") format_error(where + ".role must be \"E\" or \"F\"");
    (role == "E" ? spec.shape_E : spec.shape_F).push_back(parse_shape(s, where));
  }
  const json& grid = doc["grid"];
  require_keys(grid, "grid", {"bounds", "resolution"});
  if (!grid["bounds"].is_array() || grid["bounds"].size() != 4) {
    format_error("grid.bounds must be [xmin, ymin, xmax, ymax]");
  }
  spec.grid_bounds = {number(grid["bounds"][0], "grid.bounds"), number(grid["bounds"][1], "grid.bounds"),
                      number(grid["bounds"][2], "grid.bounds"), number(grid["bounds"][3], "grid.bounds")};
  if (!grid["resolution"].is_number_integer()) format_error("grid.resolution must be an integer");
  spec.resolution = grid["resolution"].get<int>();
  return spec;
}

std::string serialize_spec(const CapacitorSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string field_header_json(const PotentialField& field, std::string_view data_file) {
  const Rect& b = field.mask.bounds();
  json o;
  o["schema"] = kFieldSchema;
  o["data"] = data_file;
  o["dtype"] = "float64-le";
  o["order"] = "row-major, row j at y = ymin + (j + 1/2) h";
  o["resolution"] = field.mask.n();
  o["bounds"] = {b.xmin, b.ymin, b.xmax, b.ymax};
  o["h"] = field.mask.h();
  o["capacity"] = field.capacity;
  o["energy_capacity"] = field.energy_capacity;
  o["dirichlet_energy"] = field.dirichlet_energy;
  o["residual"] = field.residual;
  o["iterations"] = field.iterations;
  o["unreliable"] = field.unreliable;
  return o.dump(2) + "\n";
}

void write_field(const PotentialField& field, const std::filesystem::path& stem) {
  std::filesystem::path bin = stem, header = stem;
  bin += ".bin";
  header += ".json";
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + bin.string());
  static_assert(std::numeric_limits<double>::is_iec559);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(field.values.data()),
              static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  } else {
    for (double v : field.values) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      char bytes[8];
      for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
      out.write(bytes, 8);
    }
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + bin.string());
  write_text_file(header, field_header_json(field, bin.filename().string()));
}

std::string curve_csv(const LevelCurve& curve) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "x,y\n";
  for (Point p : curve.points) os << p.x << ',' << p.y << '\n';
  return os.str();
}

std::string curve_json(const LevelCurve& curve) { return curve_record(curve).dump(2) + "\n"; }

std::string report_json(const AnalysisReport& r) {
  json o;
  o["schema"] = kReportSchema;
  o["spec"] = spec_to_json(r.spec);
  o["capacity"] = r.capacity;
  o["energy_capacity"] = r.energy_capacity;
  o["dirichlet_energy"] = r.dirichlet_energy;
  o["solver"] = {{"resolution", r.spec.resolution},
                 {"tolerance", r.tolerance},
                 {"residual", r.residual},
                 {"iterations", r.iterations},
                 {"unreliable", r.unreliable}};
  o["beta0"] = {{"stored", r.beta0.stored},
                {"oracle", r.beta0.oracle},
                {"difference", r.beta0.difference},
                {"consistent", r.beta0.consistent}};
  json levels = json::array();
  for (const auto& rec : r.levels) {
    json l = curve_record(rec.curve);
    l["jordan"] = {{"closed", rec.jordan.closed},
                   {"simple", rec.jordan.simple},
                   {"orientation", rec.jordan.orientation},
                   {"signed_area", rec.jordan.signed_area},
                   {"winding", rec.jordan.winding}};
    l["turning"] = {{"constant", rec.turning.constant},
                    {"witness", {rec.turning.witness_first, rec.turning.witness_second}},
                    {"samples", rec.turning.samples},
                    {"decimation", rec.turning.decimation}};
    l["k_level"] = rec.k_level;
    levels.push_back(l);
  }
  o["levels"] = levels;
  json bounds = json::array();
  for (const auto& b : r.bounds) bounds.push_back(bound_record(b));
  o["bounds"] = bounds;
  json comps = json::array();
  for (const auto& c : r.comparisons) comps.push_back({{"a", c.a}, {"b", c.b}, {"K", c.K}});
  o["comparisons"] = comps;
  if (r.homotopy) {
    o["homotopy"] = {{"subdomain_capacity", r.homotopy->subdomain_capacity},
                     {"K", r.homotopy->K},
                     {"kind", "upper bound certificate"}};
  }
  o["notes"] = {"turning constants are empirical indicators; no inequality between C and K is asserted",
                "capacity is the ring modulus 8*pi/D; energy_capacity is D/(4*pi)"};
  return o.dump(2) + "\n";
}

std::string bound_json(const BoundReport& bound) { return bound_record(bound).dump(2) + "\n"; }

std::string bounds_json(const std::vector<BoundReport>& bounds) {
  json arr = json::array();
  for (const auto& b : bounds) arr.push_back(bound_record(b));
  return arr.dump(2) + "\n";
}

std::string collar_json(const CollarResult& c) {
  json o = {{"ell", c.ell}, {"r", c.r}, {"r0", c.r0}, {"delta0", c.delta0}};
  return o.dump(2) + "\n";
}

std::vector<BoundReport> evaluate_bound_requests(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    format_error(std::string("bound requests are not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) format_error("bound requests must be a JSON array");
  std::vector<BoundReport> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = "requests[" + std::to_string(i) + "]";
    require_keys(doc[i], where, {"bound", "inputs"});
    if (!doc[i]["bound"].is_string()) format_error(where + ".bound must be a string");
    const auto kind = parse_bound_kind(doc[i]["bound"].get<std::string>());
    if (!kind) format_error(where + " names an unknown bound");
    if (!doc[i]["inputs"].is_object()) format_error(where + ".inputs must be an object");
    std::map<std::string, double> inputs;
    for (const auto& [k, v] : doc[i]["inputs"].items()) inputs[k] = number(v, where + "." + k);
    out.push_back(evaluate_bound(*kind, inputs));
  }
  return out;
}

std::string report_svg(const AnalysisReport& report) {
  if (report.levels.empty()) {
    throw Error(ErrorCode::DomainError, "an SVG needs at least one level curve");
  }
  const Rect& b = report.spec.grid_bounds;
  const double h = b.width() / std::max(report.spec.resolution, 1);
  std::ostringstream os;
  os << svg_open(b);
  for (const auto& s : report.spec.shape_F) svg_shape(os, s, b, h, "#4a78b5");
  for (const auto& s : report.spec.shape_E) svg_shape(os, s, b, h, "#c8553d");
  const double stroke = b.width() / 600.0;
  for (const auto& rec : report.levels) {
    os << "  <polyline fill=\"none\" stroke=\"#222222\" stroke-width=\"" << fmt(stroke)
       << "\" data-level=\"" << fmt(rec.level) << "\" points=\"" << polyline(rec.curve.points)
       << "\"/>\n";
  }
  os << " </g>\n</svg>\n";
  return os.str();
}

std::vector<ChainCurve> chain_curves(const MapChain& chain, const std::vector<double>& radii,
                                     int samples) {
  std::vector<ChainCurve> out;
  for (double rho : radii) {
    ChainCurve c;
    c.radius = rho;
    for (int k = 0; k <= samples; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / samples;
      try {
        c.points.push_back(evaluate_chain(chain, std::polar(rho, theta)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainViolation) throw;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string chain_csv(const std::vector<ChainCurve>& curves) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "radius,x,y\n";
  for (const auto& c : curves) {
    for (cplx w : c.points) os << c.radius << ',' << w.real() << ',' << w.imag() << '\n';
  }
  return os.str();
}

std::string chain_svg(const MapChain& chain, const std::vector<ChainCurve>& curves,
                      double half_width) {
  const Rect b{-half_width, -half_width, half_width, half_width};
  const double stroke = b.width() / 600.0;
  std::ostringstream os;
  os << svg_open(b);
  const double c = chain.ray_gap();
  os << "  <line x1=\"-1\" y1=\"0\" x2=\"1\" y2=\"0\" stroke=\"#c8553d\" stroke-width=\""
     << fmt(3 * stroke) << "\"/>\n";
  for (int sgn : {1, -1}) {
    os << "  <line x1=\"0\" y1=\"" << fmt(sgn * c) << "\" x2=\"0\" y2=\"" << fmt(sgn * half_width)
       << "\" stroke=\"#4a78b5\" stroke-width=\"" << fmt(3 * stroke) << "\"/>\n";
  }
  for (const auto& curve : curves) {
    std::vector<Point> pts;
    for (cplx w : curve.points) pts.push_back({w.real(), w.imag()});
    os << "  <polyline fill=\"none\" stroke=\"#222222\" stroke-width=\"" << fmt(stroke)
       << "\" data-radius=\"" << fmt(curve.radius) << "\" points=\"" << polyline(pts) << "\"/>\n";
  }
  os << " </g>\n</svg>\n";
  return os.str();
}

}  // namespace capq
