#include "resonance/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "resonance/errors.hpp"

namespace resonance {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::InvalidConfig, key + ": " + what);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
    invalid(key, "expected a number, got '" + text + "'");
  }
  return value;
}

int to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
    invalid(key, "expected an integer, got '" + text + "'");
  }
  return value;
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  invalid(key, "expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
  return out;
}

std::string format(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

std::string format(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format(xs[i]);
  return out;
}

std::string format(cplx z) {
  std::string out = format(z.real());
  if (z.imag() != 0.0) out += (z.imag() < 0 ? "" : "+") + format(z.imag()) + "i";
  return out;
}

}  // namespace

ConfigEntries parse_config(std::istream& in) {
  ConfigEntries entries;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) {
      throw Error(ErrorCode::InvalidConfig,
                  "line " + std::to_string(number) + ": expected 'key = value'");
    }
    entries[key] = trim(line.substr(eq + 1));
  }
  return entries;
}

ConfigEntries parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read config file '" + path + "'");
  return parse_config(in);
}

void apply_override(ConfigEntries& entries, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const std::string key = eq == std::string::npos ? "" : trim(assignment.substr(0, eq));
  if (key.empty()) {
    throw Error(ErrorCode::InvalidConfig, "override '" + assignment + "' is not key=value");
  }
  entries[key] = trim(assignment.substr(eq + 1));
}

cplx parse_complex(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ') t += ch;
  }
  if (t.empty()) invalid("complex", "empty value");
  if (t.back() != 'i') return {to_double("complex", t), 0.0};
  t.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return to_double("complex", part[0] == '+' ? part.substr(1) : part);
  };
  if (split == std::string::npos) return {0.0, imag_part(t)};
  return {to_double("complex", t.substr(0, split)), imag_part(t.substr(split))};
}

RunConfig make_run_config(const ConfigEntries& entries) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"surface.type", [&](auto&, auto& v) { c.surface.type = trim(v); }},
      {"surface.lengths", [&](auto& k, auto& v) { c.surface.lengths = to_doubles(k, v); }},
      {"surface.inner_lengths",
       [&](auto& k, auto& v) { c.surface.inner_lengths = to_doubles(k, v); }},
      {"surface.phi", [&](auto& k, auto& v) { c.surface.phi = to_double(k, v); }},
      {"surface.rotation", [&](auto& k, auto& v) { c.surface.rotation = to_double(k, v); }},
      {"surface.generators", [&](auto& k, auto& v) { c.surface.generators = to_doubles(k, v); }},
      {"disc.N", [&](auto& k, auto& v) { c.order = to_int(k, v); }},
      {"disc.refinement", [&](auto& k, auto& v) { c.level = to_int(k, v); }},
      {"disc.dense_cutoff",
       [&](auto& k, auto& v) { c.transfer.dense_cutoff = static_cast<std::size_t>(to_int(k, v)); }},
      {"search.re_min", [&](auto& k, auto& v) { c.search.window.re_min = to_double(k, v); }},
      {"search.re_max", [&](auto& k, auto& v) { c.search.window.re_max = to_double(k, v); }},
      {"search.im_min", [&](auto& k, auto& v) { c.search.window.im_min = to_double(k, v); }},
      {"search.im_max", [&](auto& k, auto& v) { c.search.window.im_max = to_double(k, v); }},
      {"search.seed_re", [&](auto& k, auto& v) { c.search.seed_re = to_doubles(k, v); }},
      {"search.seed_spacing", [&](auto& k, auto& v) { c.search.seed_spacing = to_double(k, v); }},
      {"search.multiplicity", [&](auto& k, auto& v) { c.search.multiplicity = to_bool(k, v); }},
      {"search.multiplicity_radius",
       [&](auto& k, auto& v) { c.search.multiplicity_radius = to_double(k, v); }},
      {"search.multiplicity_points",
       [&](auto& k, auto& v) { c.search.multiplicity_points = to_int(k, v); }},
      {"search.topological_tol",
       [&](auto& k, auto& v) { c.search.topological_tol = to_double(k, v); }},
      {"newton.tol", [&](auto& k, auto& v) { c.search.newton.zero_tol = to_double(k, v); }},
      {"newton.step_tol", [&](auto& k, auto& v) { c.search.newton.step_tol = to_double(k, v); }},
      {"newton.max_iter", [&](auto& k, auto& v) { c.search.newton.max_iter = to_int(k, v); }},
      {"newton.fd_step", [&](auto& k, auto& v) { c.search.newton.fd_step = to_double(k, v); }},
      {"newton.residual_radius",
       [&](auto& k, auto& v) { c.search.newton.residual_radius = to_double(k, v); }},
      {"dedup.tol", [&](auto& k, auto& v) { c.search.dedup_tol = to_double(k, v); }},
      {"oracle.truncation", [&](auto& k, auto& v) { c.truncation = to_int(k, v); }},
      {"oracle.precision",
       [&](auto& k, auto& v) {
         const std::string t = trim(v);
         if (t == "double") {
           c.precision = OraclePrecision::standard;
         } else if (t == "extended") {
           c.precision = OraclePrecision::extended;
         } else {
           invalid(k, "expected double or extended");
         }
       }},
      {"grid.re_min", [&](auto& k, auto& v) { c.grid.re_min = to_double(k, v); }},
      {"grid.re_max", [&](auto& k, auto& v) { c.grid.re_max = to_double(k, v); }},
      {"grid.im_min", [&](auto& k, auto& v) { c.grid.im_min = to_double(k, v); }},
      {"grid.im_max", [&](auto& k, auto& v) { c.grid.im_max = to_double(k, v); }},
      {"grid.re_points", [&](auto& k, auto& v) { c.grid.re_points = to_int(k, v); }},
      {"grid.im_points", [&](auto& k, auto& v) { c.grid.im_points = to_int(k, v); }},
      {"lengths.max_k", [&](auto& k, auto& v) { c.max_word_length = to_int(k, v); }},
      {"compare.points",
       [&](auto& k, auto& v) {
         c.compare_points.clear();
         for (const auto& item : split_list(v)) {
           try {
             c.compare_points.push_back(parse_complex(item));
           } catch (const Error&) {
             invalid(k, "cannot parse complex number '" + item + "'");
           }
         }
       }},
      {"compare.tol", [&](auto& k, auto& v) { c.compare_tol = to_double(k, v); }},
      {"output.path", [&](auto&, auto& v) { c.output = trim(v); }},
  };

  for (const auto& [key, value] : entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) invalid(key, "unknown key");
    it->second(key, value);
  }

  const auto& w = c.search.window;
  if (!w.valid()) invalid("search", "window is empty");
  if (c.order < 2) invalid("disc.N", "must be >= 2");
  if (c.level < 0) invalid("disc.refinement", "must be >= 0");
  if (!(c.search.seed_spacing > 0.0)) invalid("search.seed_spacing", "must be positive");
  const auto& nw = c.search.newton;
  if (!(nw.zero_tol > 0.0) || !(nw.step_tol > 0.0) || !(nw.fd_step > 0.0) ||
      !(nw.residual_radius > 0.0)) {
    invalid("newton", "tolerances must be positive");
  }
  if (nw.max_iter < 1) invalid("newton.max_iter", "must be >= 1");
  if (!(c.search.dedup_tol > 0.0)) invalid("dedup.tol", "must be positive");
  if (!(c.search.multiplicity_radius > 0.0)) invalid("search.multiplicity_radius", "must be positive");
  if (c.search.multiplicity_points < 8) invalid("search.multiplicity_points", "must be >= 8");
  if (c.truncation < 1) invalid("oracle.truncation", "must be >= 1");
  if (!(c.grid.re_min <= c.grid.re_max) || !(c.grid.im_min <= c.grid.im_max) ||
      c.grid.re_points < 1 || c.grid.im_points < 1) {
    invalid("grid", "needs min <= max and at least one point per axis");
  }
  if (c.max_word_length < 1) invalid("lengths.max_k", "must be >= 1");
  if (!(c.compare_tol > 0.0)) invalid("compare.tol", "must be positive");
  if (c.output.empty()) invalid("output.path", "empty path");
  return c;
}

ConfigEntries RunConfig::echo() const {
  ConfigEntries e;
  e["surface.type"] = surface.type;
  e["surface.lengths"] = format(surface.lengths);
  e["surface.inner_lengths"] = format(surface.inner_lengths);
  e["surface.phi"] = format(surface.phi);
  e["surface.rotation"] = format(surface.rotation);
  e["surface.generators"] = format(surface.generators);
  e["disc.N"] = std::to_string(order);
  e["disc.refinement"] = std::to_string(level);
  e["disc.dense_cutoff"] = std::to_string(transfer.dense_cutoff);
  e["search.re_min"] = format(search.window.re_min);
  e["search.re_max"] = format(search.window.re_max);
  e["search.im_min"] = format(search.window.im_min);
  e["search.im_max"] = format(search.window.im_max);
  e["search.seed_re"] = format(search.seed_re);
  e["search.seed_spacing"] = format(search.seed_spacing);
  e["search.multiplicity"] = search.multiplicity ? "true" : "false";
  e["search.multiplicity_radius"] = format(search.multiplicity_radius);
  e["search.multiplicity_points"] = std::to_string(search.multiplicity_points);
  e["search.topological_tol"] = format(search.topological_tol);
  e["newton.tol"] = format(search.newton.zero_tol);
  e["newton.step_tol"] = format(search.newton.step_tol);
  e["newton.max_iter"] = std::to_string(search.newton.max_iter);
  e["newton.fd_step"] = format(search.newton.fd_step);
  e["newton.residual_radius"] = format(search.newton.residual_radius);
  e["dedup.tol"] = format(search.dedup_tol);
  e["oracle.truncation"] = std::to_string(truncation);
  e["oracle.precision"] = precision == OraclePrecision::extended ? "extended" : "double";
  e["grid.re_min"] = format(grid.re_min);
  e["grid.re_max"] = format(grid.re_max);
  e["grid.im_min"] = format(grid.im_min);
  e["grid.im_max"] = format(grid.im_max);
  e["grid.re_points"] = std::to_string(grid.re_points);
  e["grid.im_points"] = std::to_string(grid.im_points);
  e["lengths.max_k"] = std::to_string(max_word_length);
  std::string points;
  for (std::size_t i = 0; i < compare_points.size(); ++i) {
    points += (i ? "," : "") + format(compare_points[i]);
  }
  e["compare.points"] = points;
  e["compare.tol"] = format(compare_tol);
  e["output.path"] = output;
  return e;
}

SchottkyData build_surface(const SurfaceSpec& spec) {
  const auto& l = spec.lengths;
  auto need = [&](std::size_t count) {
    if (l.size() != count) {
      invalid("surface.lengths", spec.type + " takes " + std::to_string(count) + " values");
    }
  };
  if (spec.type == "cylinder") {
    need(1);
    return hyperbolic_cylinder(l[0]);
  }
  if (spec.type == "three_funnel") {
    need(3);
    return three_funnel(l[0], l[1], l[2], Validation::skip);
  }
  if (spec.type == "n_funnel") {
    if (l.size() < 3) invalid("surface.lengths", "n_funnel takes at least 3 widths");
    std::optional<std::vector<double>> inner;
    if (!spec.inner_lengths.empty()) inner = spec.inner_lengths;
    return n_funnel(l, inner, Validation::skip);
  }
  if (spec.type == "funneled_torus") {
    need(2);
    return funneled_torus(l[0], l[1], spec.phi, spec.rotation, Validation::skip);
  }
  if (spec.type == "generators") {
    const auto& g = spec.generators;
    if (g.empty() || g.size() % 4 != 0) {
      invalid("surface.generators", "expects a,b,c,d for each generator");
    }
    std::vector<MoebiusTransform> maps;
    for (std::size_t i = 0; i < g.size(); i += 4) maps.emplace_back(g[i], g[i + 1], g[i + 2], g[i + 3]);
    return SchottkyData::from_generators(std::move(maps), "generators");
  }
  invalid("surface.type", "unknown surface type '" + spec.type + "'");
}

}  // namespace resonance
