#pragma once

#include <complex>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "resonance/schottky.hpp"
#include "resonance/transfer.hpp"
#include "resonance/zerofinder.hpp"

namespace resonance {

inline constexpr const char* kToolVersion = "0.1.0";

/// Raw `key = value` entries; later assignments replace earlier ones.
using ConfigEntries = std::map<std::string, std::string>;

/// Parses flat `key = value` lines. `#` starts a comment; blank lines are
/// skipped. Throws InvalidConfig with the line number on malformed input.
ConfigEntries parse_config(std::istream& in);
ConfigEntries parse_config_file(const std::string& path);

/// Applies one `key=value` override.
void apply_override(ConfigEntries& entries, const std::string& assignment);

enum class OraclePrecision { standard, extended };

struct SurfaceSpec {
  std::string type = "three_funnel";  // cylinder, three_funnel, n_funnel, funneled_torus, generators
  std::vector<double> lengths{10.0, 10.0, 10.0};
  std::vector<double> inner_lengths;  // n_funnel only; empty: tuned
  double phi = std::numbers::pi / 2.0;                // funneled_torus
  double rotation = std::numbers::pi / 8.0;           // funneled_torus
  std::vector<double> generators;     // a,b,c,d per generator
};

struct GridSpec {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -10.0;
  double im_max = 10.0;
  int re_points = 21;
  int im_points = 201;
};

struct RunConfig {
  SurfaceSpec surface;
  int order = 24;
  int level = 0;
  TransferOptions transfer;
  SearchOptions search;
  int truncation = 8;
  OraclePrecision precision = OraclePrecision::standard;
  GridSpec grid;
  int max_word_length = 4;
  std::vector<cplx> compare_points{{0.3, 0.0}};
  double compare_tol = 1e-6;
  std::string output = "-";  // "-" writes to stdout

  /// Every recognized key with its effective value, sorted by key.
  ConfigEntries echo() const;
};

/// Known keys with their defaults filled in. Throws InvalidConfig on unknown
/// keys, unparsable values or violated invariants.
RunConfig make_run_config(const ConfigEntries& entries);

/// "0.3", "-2i", "-0.5+2i", "1e-3-4.5i".
cplx parse_complex(const std::string& text);

/// Surface from the config; family constructors run without validation so
/// `validate` can report violations itself.
SchottkyData build_surface(const SurfaceSpec& spec);

}  // namespace resonance
