#pragma once

// Scenario, domain, layout and load-profile files. Field names carry their
// units; values are converted to SI when read. Floats are written with 17
// significant digits so every value reads back bit-identically.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "borefield/errors.hpp"
#include "borefield/field_response.hpp"
#include "borefield/geometry.hpp"
#include "borefield/placement.hpp"
#include "borefield/scenario.hpp"

namespace borefield {

using json = nlohmann::ordered_json;

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr std::size_t kHoursPerYear = 8760;

// ---------------------------------------------------------------------------
// Output helpers

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json_value(const json& v, std::ostream& os, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write_json_value(it.value(), os, indent, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(),
                                     [](const json& e) { return e.is_object() || e.is_array(); });
      const bool pairs = std::all_of(v.begin(), v.end(), [](const json& e) {
        return e.is_array() && e.size() <= 3 &&
               std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_number(); });
      });
      if (flat || pairs) {
        os << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << (flat ? ", " : ",\n" + pad);
          else if (!flat) os << "\n" << pad;
          write_json_value(v[i], os, indent, depth + 1);
        }
        if (!flat) os << "\n" << close_pad;
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json_value(v[i], os, indent, depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      if (!std::isfinite(v.get<double>())) {
        os << "null";
      } else {
        os << format_double(v.get<double>());
      }
      return;
    default:
      os << v.dump();
      return;
  }
}

}  // namespace detail

/// Pretty-printed JSON with %.17g floats.
inline std::string to_json_text(const json& v, int indent = 2) {
  std::ostringstream os;
  detail::write_json_value(v, os, indent, 0);
  os << "\n";
  return os.str();
}

/// Writes `content` to a sibling temporary file and renames it into place.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw Error("io", "failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("io", "cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Load profiles

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::optional<double> parse_number(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace detail

/// Hourly ground load from `hour,power_w` CSV text. `repeat` tiles the
/// series that many times (e.g. one year over a 20-year horizon).
inline LoadProfile parse_load_profile(std::string_view text, std::size_t repeat = 1,
                                      const std::string& name = "load") {
  if (repeat == 0) throw ValidationError("repeat count must be at least 1");
  LoadProfile load;
  load.step_duration = kSecondsPerHour;
  std::size_t row = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string line = detail::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++row;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "hour,power_w") {
        throw ValidationError(name + " row " + std::to_string(row) +
                              ": expected header 'hour,power_w'");
      }
      header_seen = true;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ValidationError(name + " row " + std::to_string(row) + ": expected two columns");
    }
    const auto hour = detail::parse_number(std::string_view(line).substr(0, comma));
    const auto power = detail::parse_number(std::string_view(line).substr(comma + 1));
    if (!hour || !power) {
      throw ValidationError(name + " row " + std::to_string(row) + ": non-numeric value");
    }
    const auto expected = static_cast<double>(load.values.size());
    if (*hour != expected) {
      std::ostringstream msg;
      msg << name << " row " << row << ": hour " << *hour << " found, expected " << expected
          << (*hour < expected ? " (duplicate or decreasing)" : " (gap)");
      throw ValidationError(msg.str());
    }
    load.values.push_back(*power);
  }
  if (!header_seen) throw ValidationError(name + " is empty");
  if (load.values.empty()) throw ValidationError(name + " has a header but no rows");
  const std::size_t base = load.values.size();
  load.values.reserve(base * repeat);
  for (std::size_t r = 1; r < repeat; ++r) {
    load.values.insert(load.values.end(), load.values.begin(),
                       load.values.begin() + static_cast<std::ptrdiff_t>(base));
  }
  return load;
}

inline LoadProfile read_load_profile(const std::filesystem::path& path, std::size_t repeat = 1) {
  return parse_load_profile(read_text_file(path), repeat, path.string());
}

inline std::string load_profile_csv(const LoadProfile& load) {
  std::string out = "hour,power_w\n";
  for (std::size_t i = 0; i < load.values.size(); ++i) {
    out += std::to_string(i) + "," + format_double(load.values[i]) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Strict JSON reading

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline json parse_json_text(std::string_view text, const std::string& name) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << name << ":" << line << ":" << column << ": " << e.what();
    throw ParseError(msg.str(), line, column);
  }
}

/// Reads fields of one JSON object, recording type errors and, in finish(),
/// every key that was never consumed.
class ObjectReader {
public:
  ObjectReader(const json& obj, std::string path, std::vector<std::string>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) {
      errors_.push_back(path_ + " must be an object");
      valid_ = false;
    }
  }

  bool has(const std::string& key) const { return valid_ && obj_.contains(key); }

  const json* get(const std::string& key) {
    if (!has(key)) return nullptr;
    used_.insert(key);
    return &obj_.at(key);
  }

  std::string field(const std::string& key) const { return path_ + "." + key; }

  std::optional<double> number(const std::string& key, bool required) {
    const json* v = get(key);
    if (!v) {
      if (required && valid_) errors_.push_back(field(key) + " is required");
      return std::nullopt;
    }
    if (!v->is_number()) {
      errors_.push_back(field(key) + " must be a number");
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::uint64_t> count(const std::string& key, bool required) {
    const json* v = get(key);
    if (!v) {
      if (required && valid_) errors_.push_back(field(key) + " is required");
      return std::nullopt;
    }
    if (!v->is_number_unsigned()) {
      errors_.push_back(field(key) + " must be a non-negative integer");
      return std::nullopt;
    }
    return v->get<std::uint64_t>();
  }

  std::optional<std::string> string(const std::string& key, bool required) {
    const json* v = get(key);
    if (!v) {
      if (required && valid_) errors_.push_back(field(key) + " is required");
      return std::nullopt;
    }
    if (!v->is_string()) {
      errors_.push_back(field(key) + " must be a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  void finish() {
    if (!valid_) return;
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) errors_.push_back(field(it.key()) + " is not a known field");
    }
  }

private:
  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> used_;
  bool valid_ = true;
};

inline std::optional<Point> parse_point(const json& v, const std::string& path,
                                        std::vector<std::string>& errors) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    errors.push_back(path + " must be an [x, y] pair of numbers");
    return std::nullopt;
  }
  return Point{v[0].get<double>(), v[1].get<double>()};
}

inline std::vector<Point> parse_points(const json& v, const std::string& path,
                                       std::vector<std::string>& errors) {
  std::vector<Point> out;
  if (!v.is_array()) {
    errors.push_back(path + " must be an array of [x, y] pairs");
    return out;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (auto p = parse_point(v[i], path + "[" + std::to_string(i) + "]", errors)) out.push_back(*p);
  }
  return out;
}

inline DomainPolygon parse_domain(const json& v, const std::string& path,
                                  std::vector<std::string>& errors) {
  DomainPolygon d;
  ObjectReader r(v, path, errors);
  if (const json* outer = r.get("outer")) {
    d.outer = parse_points(*outer, r.field("outer"), errors);
  } else if (v.is_object()) {
    errors.push_back(r.field("outer") + " is required");
  }
  if (const json* holes = r.get("holes")) {
    if (!holes->is_array()) {
      errors.push_back(r.field("holes") + " must be an array of rings");
    } else {
      for (std::size_t i = 0; i < holes->size(); ++i) {
        d.holes.push_back(
            parse_points((*holes)[i], r.field("holes") + "[" + std::to_string(i) + "]", errors));
      }
    }
  }
  r.finish();
  const std::size_t before = errors.size();
  if (before == 0) collect_errors(d, path, errors);
  return d;
}

inline json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const Point& p : pts) a.push_back(json::array({p.x, p.y}));
  return a;
}

inline void throw_if_errors(const std::vector<std::string>& errors, const std::string& name) {
  if (errors.empty()) return;
  std::string msg = name + ": " + std::to_string(errors.size()) + " validation error(s): ";
  msg += join_errors(errors);
  throw ValidationError(msg);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Domains and layouts

inline DomainPolygon parse_domain_text(std::string_view text, const std::string& name = "domain") {
  const json doc = detail::parse_json_text(text, name);
  std::vector<std::string> errors;
  DomainPolygon d = detail::parse_domain(doc, "domain", errors);
  detail::throw_if_errors(errors, name);
  return d;
}

inline DomainPolygon read_domain(const std::filesystem::path& path) {
  return parse_domain_text(read_text_file(path), path.string());
}

inline json domain_json(const DomainPolygon& d) {
  json j;
  j["outer"] = detail::points_json(d.outer);
  json holes = json::array();
  for (const auto& h : d.holes) holes.push_back(detail::points_json(h));
  j["holes"] = holes;
  return j;
}

/// Layout document: positions, seed and CVT objective plus a spacing report.
inline json layout_json(const PlacementResult& r) {
  json j;
  j["positions"] = detail::points_json(r.generators);
  j["seed"] = r.seed;
  j["objective"] = r.objective;
  j["objective_raw"] = r.raw_objective;
  j["iterations"] = r.iterations;
  j["final_movement_m2"] = r.final_movement;
  j["min_pairwise_distance_m"] = r.min_pairwise_distance;
  j["min_boundary_distance_m"] = r.min_boundary_distance;
  j["spacing_warning"] = r.spacing_warning;
  return j;
}

/// Layout document for a fixed (user-given) layout.
inline json layout_json(const FieldLayout& layout) {
  json j;
  j["positions"] = detail::points_json(layout.positions);
  j["seed"] = nullptr;
  j["objective"] = nullptr;
  return j;
}

// ---------------------------------------------------------------------------
// Scenarios

namespace detail {

inline void parse_layout_section(const json& v, const std::filesystem::path& base_dir,
                                 Scenario& s, std::vector<std::string>& errors) {
  ObjectReader r(v, "layout", errors);
  const bool fixed = r.has("positions");
  const bool placed = r.has("domain") || r.has("domain_file");
  if (fixed == placed) {
    errors.push_back("layout needs exactly one of 'positions' or 'domain'/'domain_file'");
  }
  if (const json* p = r.get("positions")) {
    s.layout.positions = parse_points(*p, "layout.positions", errors);
  }
  if (placed) {
    PlacementRequest req;
    if (r.has("domain") && r.has("domain_file")) {
      errors.push_back("layout.domain and layout.domain_file are mutually exclusive");
    }
    if (const json* d = r.get("domain")) {
      req.domain = parse_domain(*d, "layout.domain", errors);
    }
    if (auto file = r.string("domain_file", false)) {
      try {
        req.domain = read_domain(base_dir / *file);
      } catch (const Error& e) {
        errors.push_back(std::string("layout.domain_file: ") + e.what());
      }
    }
    if (auto n = r.count("count", true)) req.count = *n;
    if (auto m = r.count("samples", false)) req.options.samples = *m;
    if (auto k = r.count("max_iterations", false)) req.options.max_iterations = *k;
    if (auto e = r.number("tolerance_m2", false)) req.options.tolerance = *e;
    if (auto seed = r.count("seed", false)) req.options.seed = *seed;
    if (auto restarts = r.count("restarts", false)) req.options.restarts = *restarts;
    if (auto sp = r.number("min_spacing_m", false)) req.options.min_spacing = *sp;
    s.placement = std::move(req);
  }
  r.finish();
}

inline void parse_load_section(const json& v, const std::filesystem::path& base_dir, Scenario& s,
                               std::vector<std::string>& errors) {
  ObjectReader r(v, "load", errors);
  const bool from_file = r.has("file");
  const bool inline_values = r.has("values_w");
  if (from_file == inline_values) {
    errors.push_back("load needs exactly one of 'file' or 'values_w'");
  }
  std::size_t repeat = 1;
  if (auto y = r.count("repeat_years", false)) {
    if (*y == 0) errors.push_back("load.repeat_years must be at least 1");
    else repeat = *y;
  }
  if (auto file = r.string("file", false)) {
    s.load_source.file = *file;
    s.load_source.repeat_years = repeat;
    try {
      s.load = read_load_profile(base_dir / *file, repeat);
    } catch (const Error& e) {
      errors.push_back(std::string("load.file: ") + e.what());
    }
  }
  if (const json* values = r.get("values_w")) {
    s.load_source = {"", 1};
    s.load.step_duration = kSecondsPerHour;
    if (auto step = r.number("step_s", false)) s.load.step_duration = *step;
    if (!values->is_array()) {
      errors.push_back("load.values_w must be an array of numbers");
    } else {
      std::vector<double> one;
      for (std::size_t i = 0; i < values->size(); ++i) {
        if (!(*values)[i].is_number()) {
          errors.push_back("load.values_w[" + std::to_string(i) + "] must be a number");
          break;
        }
        one.push_back((*values)[i].get<double>());
      }
      for (std::size_t k = 0; k < repeat; ++k) s.load.values.insert(s.load.values.end(), one.begin(), one.end());
    }
  } else if (r.has("step_s")) {
    r.get("step_s");
    errors.push_back("load.step_s only applies to inline values_w; CSV loads are hourly");
  }
  if (auto horizon = r.number("horizon_hours", false)) {
    const double actual = s.load.horizon() / kSecondsPerHour;
    if (std::abs(*horizon - actual) > 1e-9 * std::max(1.0, actual)) {
      std::ostringstream msg;
      msg << "load.horizon_hours (" << *horizon << ") does not match the load horizon (" << actual
          << " h)";
      errors.push_back(msg.str());
    }
  }
  r.finish();
}

}  // namespace detail

/// Parses and validates a scenario document. Relative file references are
/// resolved against `base_dir`. When the layout is given as a domain, the
/// boreholes are placed here by the CVT iteration.
inline Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                               const std::string& name = "scenario") {
  const json doc = detail::parse_json_text(text, name);
  std::vector<std::string> errors;
  Scenario s;
  detail::ObjectReader top(doc, "scenario", errors);

  if (const json* v = top.get("soil")) {
    detail::ObjectReader r(*v, "soil", errors);
    if (auto x = r.number("thermal_conductivity_w_per_m_k", true)) s.soil.thermal_conductivity = *x;
    const bool per_day = r.has("thermal_diffusivity_m2_per_day");
    const bool per_s = r.has("thermal_diffusivity_m2_per_s");
    if (per_day == per_s) {
      errors.push_back("soil needs exactly one of thermal_diffusivity_m2_per_day or thermal_diffusivity_m2_per_s");
    }
    if (auto x = r.number("thermal_diffusivity_m2_per_day", false)) s.soil.thermal_diffusivity = *x / kSecondsPerDay;
    if (auto x = r.number("thermal_diffusivity_m2_per_s", false)) s.soil.thermal_diffusivity = *x;
    if (auto x = r.number("undisturbed_temperature_c", true)) s.soil.undisturbed_temperature = *x;
    r.finish();
  } else {
    errors.push_back("scenario.soil is required");
  }

  std::optional<double> total_flow, per_flow;
  if (const json* v = top.get("fluid")) {
    detail::ObjectReader r(*v, "fluid", errors);
    if (auto x = r.number("specific_heat_j_per_kg_k", true)) s.fluid.specific_heat = *x;
    if (auto x = r.number("density_kg_per_m3", true)) s.fluid.density = *x;
    total_flow = r.number("total_mass_flow_kg_per_s", false);
    per_flow = r.number("per_borehole_mass_flow_kg_per_s", false);
    if (!total_flow && !per_flow) {
      errors.push_back("fluid needs total_mass_flow_kg_per_s or per_borehole_mass_flow_kg_per_s");
    }
    r.finish();
  } else {
    errors.push_back("scenario.fluid is required");
  }

  if (const json* v = top.get("borehole")) {
    detail::ObjectReader r(*v, "borehole", errors);
    const bool radius = r.has("radius_m");
    const bool diameter = r.has("diameter_mm");
    if (radius == diameter) errors.push_back("borehole needs exactly one of radius_m or diameter_mm");
    if (auto x = r.number("radius_m", false)) s.borehole.radius = *x;
    if (auto x = r.number("diameter_mm", false)) s.borehole.radius = *x / 2000.0;
    if (auto x = r.number("soil_resistance_m_k_per_w", true)) s.borehole.soil_resistance = *x;
    if (auto x = r.number("interpipe_resistance_m_k_per_w", true)) s.borehole.interpipe_resistance = *x;
    r.finish();
  } else {
    errors.push_back("scenario.borehole is required");
  }

  if (const json* v = top.get("layout")) {
    detail::parse_layout_section(*v, base_dir, s, errors);
  } else {
    errors.push_back("scenario.layout is required");
  }

  if (const json* v = top.get("load")) {
    detail::parse_load_section(*v, base_dir, s, errors);
  } else {
    errors.push_back("scenario.load is required");
  }

  if (const json* v = top.get("limits")) {
    detail::ObjectReader r(*v, "limits", errors);
    if (auto x = r.number("min_outlet_c", true)) s.limits.min_outlet = *x;
    if (auto x = r.number("max_outlet_c", true)) s.limits.max_outlet = *x;
    if (auto x = r.number("min_length_m", true)) s.limits.min_length = *x;
    if (auto x = r.number("max_length_m", true)) s.limits.max_length = *x;
    if (auto x = r.number("temperature_tolerance_k", false)) s.limits.temperature_tolerance = *x;
    if (auto x = r.number("length_tolerance_m", false)) s.limits.length_tolerance = *x;
    r.finish();
  } else {
    errors.push_back("scenario.limits is required");
  }

  if (auto c = top.count("coarse_factor", false)) s.coarse_factor = *c;
  top.finish();

  // Placement needs a valid domain and count; skip it if those already failed.
  if (s.placement && errors.empty()) {
    try {
      PlacementResult placed = lloyd_cvt(s.placement->domain, s.placement->count, s.placement->options);
      s.layout.positions = placed.generators;
      s.placement_result = std::move(placed);
    } catch (const Error& e) {
      errors.push_back(std::string("layout: ") + e.what());
    }
  }

  const double nb = static_cast<double>(s.layout.size());
  if (per_flow) s.fluid.per_borehole_mass_flow = *per_flow;
  if (total_flow) s.fluid.total_mass_flow = *total_flow;
  if (nb > 0) {
    if (total_flow && !per_flow) s.fluid.per_borehole_mass_flow = *total_flow / nb;
    if (per_flow && !total_flow) s.fluid.total_mass_flow = *per_flow * nb;
  }

  collect_errors(s, errors);
  // Report each field once: a read error already covers the invariant check
  // on the default value left behind.
  std::vector<std::string> unique;
  std::set<std::string> fields;
  for (auto& e : errors) {
    const std::string field = e.substr(0, e.find(' '));
    if (fields.insert(field).second) unique.push_back(std::move(e));
  }
  detail::throw_if_errors(unique, name);
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.parent_path(), path.string());
}

/// Scenario document in SI-named fields; reading it back reproduces `s`.
inline json scenario_json(const Scenario& s) {
  json j;
  j["soil"] = {{"thermal_conductivity_w_per_m_k", s.soil.thermal_conductivity},
               {"thermal_diffusivity_m2_per_s", s.soil.thermal_diffusivity},
               {"undisturbed_temperature_c", s.soil.undisturbed_temperature}};
  j["fluid"] = {{"specific_heat_j_per_kg_k", s.fluid.specific_heat},
                {"density_kg_per_m3", s.fluid.density},
                {"total_mass_flow_kg_per_s", s.fluid.total_mass_flow},
                {"per_borehole_mass_flow_kg_per_s", s.fluid.per_borehole_mass_flow}};
  j["borehole"] = {{"radius_m", s.borehole.radius},
                   {"soil_resistance_m_k_per_w", s.borehole.soil_resistance},
                   {"interpipe_resistance_m_k_per_w", s.borehole.interpipe_resistance}};
  json layout;
  if (s.placement) {
    const auto& p = *s.placement;
    layout["domain"] = domain_json(p.domain);
    layout["count"] = p.count;
    layout["samples"] = p.options.samples;
    layout["max_iterations"] = p.options.max_iterations;
    layout["tolerance_m2"] = p.options.tolerance;
    layout["seed"] = p.options.seed;
    layout["restarts"] = p.options.restarts;
    layout["min_spacing_m"] = p.options.min_spacing;
  } else {
    layout["positions"] = detail::points_json(s.layout.positions);
  }
  j["layout"] = layout;
  json load;
  if (!s.load_source.file.empty()) {
    load["file"] = s.load_source.file;
    load["repeat_years"] = s.load_source.repeat_years;
  } else {
    load["step_s"] = s.load.step_duration;
    load["values_w"] = s.load.values;
  }
  j["load"] = load;
  j["limits"] = {{"min_outlet_c", s.limits.min_outlet},
                 {"max_outlet_c", s.limits.max_outlet},
                 {"min_length_m", s.limits.min_length},
                 {"max_length_m", s.limits.max_length},
                 {"temperature_tolerance_k", s.limits.temperature_tolerance},
                 {"length_tolerance_m", s.limits.length_tolerance}};
  j["coarse_factor"] = s.coarse_factor;
  return j;
}

inline void write_scenario(const std::filesystem::path& path, const Scenario& s) {
  atomic_write(path, to_json_text(scenario_json(s)));
}

}  // namespace borefield
