#include "resonance/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <omp.h>

#include "parallel.hpp"
#include "resonance/errors.hpp"
#include "resonance/orbit_oracle.hpp"

namespace resonance {

namespace {

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path + "'");
      stream_ = file_.get();
    }
    *stream_ << std::setprecision(17);
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void metadata(std::ostream& out, const std::string& command, const RunConfig& config,
              const std::string& label) {
  out << "# resonance " << kToolVersion << "\n";
  out << "# command = " << command << "\n";
  out << "# surface = " << label << "\n";
  for (const auto& [key, value] : config.echo()) out << "# " << key << " = " << value << "\n";
}

std::string word_text(const std::vector<int>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) out += (i ? " " : "") + std::to_string(word[i]);
  return out;
}

std::string_view kind_text(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Overlap: return "overlap";
    case Violation::Kind::MappingNotContained: return "mapping-not-contained";
    case Violation::Kind::PoleInsideInterval: return "pole-inside-interval";
  }
  return "unknown";
}

int cmd_validate(const RunConfig& config, const SchottkyData& data, std::ostream& out) {
  const auto violations = validate(data);
  out << "surface " << data.label() << "\n";
  out << "q = " << data.q() << ", euler characteristic = " << data.euler_characteristic() << "\n";
  for (int k = 1; k <= data.q(); ++k) {
    const MoebiusTransform g = data.generator(k);
    const auto& e = g.entries();
    out << "S_" << k << " = [" << e[0] << ", " << e[1] << "; " << e[2] << ", " << e[3] << "]\n";
  }
  for (int k : data.letters()) {
    const auto& i = data.interval(k);
    out << "I_" << k << " = [" << i.lo() << ", " << i.hi() << "]\n";
  }
  if (config.surface.type == "n_funnel") {
    for (const auto& [a, b] : waist_length_pairs(data)) {
      out << "waist lengths " << a << " " << b << "\n";
    }
  }
  for (const auto& v : violations) {
    out << "violation " << kind_text(v.kind) << " (" << v.first << ", " << v.second
        << ") margin " << v.margin << ": " << v.message << "\n";
  }
  out << (violations.empty() ? "valid" : "invalid") << "\n";
  return violations.empty() ? kExitOk : kExitInvalidConfig;
}

int cmd_zeta_grid(const RunConfig& config, const SchottkyData& data, std::ostream& out) {
  const StaticParts parts = lparts(data, config.order, config.level, config.transfer);
  const auto& g = config.grid;
  const auto nx = static_cast<std::size_t>(g.re_points);
  const auto ny = static_cast<std::size_t>(g.im_points);
  auto axis = [](double lo, double hi, std::size_t n, std::size_t i) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  std::vector<cplx> points(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      points[i * ny + j] = {axis(g.re_min, g.re_max, nx, i), axis(g.im_min, g.im_max, ny, j)};
    }
  }
  std::vector<ScaledComplex> values(points.size());
  FirstError failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t p = 0; p < static_cast<std::ptrdiff_t>(points.size()); ++p) {
    const auto i = static_cast<std::size_t>(p);
    failure.run([&] { values[i] = zeta(parts, points[i]); });
  }
  failure.rethrow();
  out << "re_s,im_s,log_abs_Z,arg_Z\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << points[i].real() << "," << points[i].imag() << "," << values[i].log_modulus << ","
        << values[i].phase << "\n";
  }
  return kExitOk;
}

int cmd_resonances(const RunConfig& config, const SchottkyData& data, std::ostream& out,
                   std::ostream& err) {
  const ResonanceSet set =
      find_resonances(data, config.order, config.level, config.search, config.transfer);
  out << "# found = " << set.resonances.size() << "\n";
  out << "re_s,im_s,residual,multiplicity,topological,seed_re,seed_im\n";
  for (const auto& r : set.resonances) {
    out << r.s.real() << "," << r.s.imag() << "," << r.residual << ",";
    if (r.multiplicity) out << *r.multiplicity;
    out << "," << (r.topological ? 1 : 0) << "," << r.seed.real() << "," << r.seed.imag() << "\n";
  }
  err << set.resonances.size() << " resonance(s) in the window\n";
  return kExitOk;
}

int cmd_lengths(const RunConfig& config, const SchottkyData& data, std::ostream& out) {
  out << "k,word,length,trace\n";
  for (int k = 1; k <= config.max_word_length; ++k) {
    for (const auto& orbit : orbits(data, k)) {
      out << k << "," << word_text(orbit.word) << "," << orbit.length << "," << orbit.trace
          << "\n";
    }
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& config, const SchottkyData& data, std::ostream& out,
                std::ostream& err) {
  const auto& points = config.compare_points;
  std::vector<cplx> lc(points.size());
  std::vector<cplx> poe(points.size());
  if (config.precision == OraclePrecision::extended) {
    const ExtendedTransfer transfer(data, config.order, config.level, config.transfer);
    const PreciseOrbitExpansion oracle(data, config.truncation);
    for (std::size_t i = 0; i < points.size(); ++i) {
      lc[i] = transfer.zeta(points[i]);
      poe[i] = oracle.zeta(points[i]);
    }
  } else {
    const StaticParts parts = lparts(data, config.order, config.level, config.transfer);
    const PeriodicOrbitExpansion oracle(data, config.truncation);
    for (std::size_t i = 0; i < points.size(); ++i) {
      lc[i] = zeta(parts, points[i]).value();
      poe[i] = oracle.zeta(points[i]);
    }
  }
  out << "re_s,im_s,abs_diff,log_abs_Z_lc,log_abs_Z_poe\n";
  bool pass = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double diff = std::abs(lc[i] - poe[i]);
    pass = pass && diff < config.compare_tol;
    out << points[i].real() << "," << points[i].imag() << "," << diff << ","
        << std::log(std::abs(lc[i])) << "," << std::log(std::abs(poe[i])) << "\n";
  }
  err << (pass ? "all" : "not all") << " differences below " << config.compare_tol << "\n";
  return pass ? kExitOk : kExitComparison;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "zeta-grid", "resonances", "lengths",
                                              "compare"};
  return names;
}

int run(const std::string& command, const ConfigEntries& entries, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  std::optional<SchottkyData> data;
  try {
    if (std::find(command_names().begin(), command_names().end(), command) ==
        command_names().end()) {
      throw Error(ErrorCode::InvalidConfig, "unknown command '" + command + "'");
    }
    config = make_run_config(entries);
    data = build_surface(config.surface);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const bool config_error = e.code() == ErrorCode::InvalidConfig ||
                              e.code() == ErrorCode::InvalidParameter ||
                              e.code() == ErrorCode::OverlappingDisks;
    return config_error ? kExitInvalidConfig : kExitComputation;
  }

  try {
    Output output(config.output, out);
    metadata(*output, command, config, data->label());
    if (command == "validate") return cmd_validate(config, *data, *output);
    if (command == "zeta-grid") return cmd_zeta_grid(config, *data, *output);
    if (command == "resonances") return cmd_resonances(config, *data, *output, err);
    if (command == "lengths") return cmd_lengths(config, *data, *output);
    return cmd_compare(config, *data, *output, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidConfig ? kExitInvalidConfig : kExitComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}

void apply_thread_limit() {
  const char* value = std::getenv("RESONANCE_THREADS");
  if (value == nullptr) return;
  char* end = nullptr;
  const long threads = std::strtol(value, &end, 10);
  if (end != value && *end == '\0' && threads > 0) omp_set_num_threads(static_cast<int>(threads));
}

}  // namespace resonance
