#include "resonance/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resonance/errors.hpp"

namespace resonance {

SchottkyData::SchottkyData(std::vector<MoebiusTransform> generators,
                           std::vector<Interval> intervals, std::string label)
    : generators_(std::move(generators)),
      intervals_(std::move(intervals)),
      label_(std::move(label)) {
  if (generators_.empty()) {
    throw Error(ErrorCode::InvalidParameter, "Schottky data needs at least one generator");
  }
  if (intervals_.size() != 2 * generators_.size()) {
    throw Error(ErrorCode::InvalidParameter, "Schottky data needs 2q intervals");
  }
}

SchottkyData SchottkyData::from_generators(std::vector<MoebiusTransform> generators,
                                           std::string label) {
  const std::size_t q = generators.size();
  std::vector<Interval> intervals(2 * q);
  for (std::size_t k = 0; k < q; ++k) {
    intervals[q + k] = isometric_disk(generators[k]);
    intervals[q - 1 - k] = isometric_disk(generators[k].inverse());
  }
  return SchottkyData(std::move(generators), std::move(intervals), std::move(label));
}

MoebiusTransform SchottkyData::generator(int k) const {
  (void)slot(k);
  const auto& g = generators_[static_cast<std::size_t>(std::abs(k) - 1)];
  return k > 0 ? g : g.inverse();
}

std::size_t SchottkyData::slot(int k) const {
  const int nq = q();
  if (k == 0 || k < -nq || k > nq) {
    throw Error(ErrorCode::InvalidParameter, "letter " + std::to_string(k) + " not in I_G");
  }
  return static_cast<std::size_t>(k < 0 ? k + nq : k + nq - 1);
}

std::vector<int> SchottkyData::letters() const {
  std::vector<int> out;
  out.reserve(2 * generators_.size());
  for (int k = -q(); k <= q(); ++k) {
    if (k != 0) out.push_back(k);
  }
  return out;
}

std::vector<Violation> validate(const SchottkyData& data) {
  std::vector<Violation> out;
  const auto letters = data.letters();

  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      const double gap = data.interval(letters[i]).gap_to(data.interval(letters[j]));
      if (!(gap > kValidationMargin)) {
        std::ostringstream msg;
        msg << "intervals I_" << letters[i] << " " << data.interval(letters[i]) << " and I_"
            << letters[j] << " " << data.interval(letters[j]) << " overlap (gap " << gap << ")";
        out.push_back({Violation::Kind::Overlap, letters[i], letters[j], gap, msg.str()});
      }
    }
  }

  // S_k must map every I_j, j != k, strictly into I_{-k}.
  for (int k : letters) {
    const MoebiusTransform g = data.generator(k);
    const Interval& target = data.interval(-k);
    for (int j : letters) {
      if (j == k) continue;
      std::ostringstream msg;
      try {
        const Interval image = map_interval(g, data.interval(j));
        const double margin =
            std::min(image.lo() - target.lo(), target.hi() - image.hi());
        if (!(margin > kValidationMargin)) {
          msg << "S_" << k << " maps I_" << j << " to " << image << ", not inside I_" << -k
              << " " << target << " (margin " << margin << ")";
          out.push_back({Violation::Kind::MappingNotContained, k, j, margin, msg.str()});
        }
      } catch (const Error&) {
        msg << "pole of S_" << k << " lies in I_" << j;
        out.push_back({Violation::Kind::PoleInsideInterval, k, j, 0.0, msg.str()});
      }
    }
  }
  return out;
}

void require_valid(const SchottkyData& data) {
  const auto violations = validate(data);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << data.label() << ": " << violations.size() << " violation(s); first: "
      << violations.front().message;
  throw Error(ErrorCode::OverlappingDisks, msg.str());
}

SchottkyData hyperbolic_cylinder(double length) {
  if (!(length > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "cylinder length must be positive");
  }
  std::ostringstream label;
  label << "cylinder(" << length << ")";
  return SchottkyData::from_generators({generator_S(length, 1.0)}, label.str());
}

double waist_function_A(double l1, double l2, double l3) {
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(l3 > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "waist_function_A needs positive lengths");
  }
  const double d = (std::cosh(0.5 * l1) * std::cosh(0.5 * l2) + std::cosh(0.5 * l3)) /
                   (std::sinh(0.5 * l1) * std::sinh(0.5 * l2));
  // d - sqrt(d^2 - 1) written as 1/(d + sqrt(d^2 - 1)) to avoid cancellation.
  return 1.0 / (d + std::sqrt(std::max(d * d - 1.0, 0.0)));
}

SchottkyData three_funnel(double l1, double l2, double l3, Validation validation) {
  const double a2 = waist_function_A(l1, l2, l3);
  std::ostringstream label;
  label << "X(" << l1 << "," << l2 << "," << l3 << ")";
  auto data = SchottkyData::from_generators({generator_S(l1, 1.0), generator_S(l2, a2)},
                                            label.str());
  if (validation == Validation::enforce) require_valid(data);
  return data;
}

namespace {

// Translation length of g h^{-1}, with det taken from the factors rather than
// from the rounded product.
double waist_length(const MoebiusTransform& g, const MoebiusTransform& h) {
  const double t = (g * h.inverse()).trace();
  const double half = 0.5 * std::abs(t) / std::sqrt(g.determinant() * h.determinant());
  return half > 1.0 ? 2.0 * std::acosh(half) : 0.0;
}

std::vector<MoebiusTransform> chain_generators(std::span<const double> widths,
                                               std::span<const double> lengths) {
  std::vector<MoebiusTransform> gens;
  gens.reserve(lengths.size());
  double a = 1.0;
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    if (k > 0) a *= waist_function_A(lengths[k - 1], lengths[k], widths[k]);
    gens.push_back(generator_S(lengths[k], a));
  }
  return gens;
}

double waist_mismatch(std::span<const double> widths, std::span<const double> lengths,
                      std::size_t k) {
  const auto gens = chain_generators(widths, lengths);
  return waist_length(gens[k - 1], gens[k + 1]) - lengths[k];
}

void tune_inner_lengths(std::span<const double> widths, std::vector<double>& lengths) {
  const double wmax = *std::max_element(widths.begin(), widths.end());
  const double lo0 = wmax;
  // cosh(l/2) and sinh(l/2) round to the same double above l ~ 37.
  const double hi0 = std::min(4.0 * wmax, std::max(2.0 * wmax, 30.0));
  constexpr double kTol = 1e-10;
  constexpr int kMaxSweeps = 500;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double max_change = 0.0;
    for (std::size_t k = 1; k + 1 < lengths.size(); ++k) {
      auto f = [&](double l) {
        lengths[k] = l;
        return waist_mismatch(widths, lengths, k);
      };
      const double old = lengths[k];
      double lo = lo0;
      double hi = hi0;
      double flo = f(lo);
      const double fhi = f(hi);
      if (std::signbit(flo) == std::signbit(fhi)) {
        lengths[k] = old;
        std::ostringstream msg;
        msg << "waist equation for inner generator " << k + 1 << " has no sign change on ["
            << lo0 << ", " << hi0 << "] (mismatch " << flo << ", " << fhi << ")";
        throw Error(ErrorCode::NoConvergence, msg.str());
      }
      while (hi - lo > kTol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (std::signbit(fmid) == std::signbit(flo)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      lengths[k] = 0.5 * (lo + hi);
      max_change = std::max(max_change, std::abs(lengths[k] - old));
    }
    if (max_change < kTol) return;
  }
  throw Error(ErrorCode::NoConvergence, "waist sweeps did not reach a fixed point");
}

}  // namespace

SchottkyData n_funnel(std::span<const double> widths,
                      std::optional<std::vector<double>> inner_lengths,
                      Validation validation) {
  const std::size_t n = widths.size();
  if (n < 3) throw Error(ErrorCode::InvalidParameter, "n_funnel needs at least 3 widths");
  for (double w : widths) {
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidParameter, "funnel widths must be positive");
  }

  std::vector<double> lengths(n - 1);
  lengths.front() = widths.front();
  lengths.back() = widths.back();

  if (inner_lengths) {
    if (inner_lengths->size() != n - 3) {
      throw Error(ErrorCode::InvalidParameter, "n_funnel needs n - 3 inner lengths");
    }
    std::copy(inner_lengths->begin(), inner_lengths->end(), lengths.begin() + 1);
  } else if (n > 3) {
    const bool equal = std::all_of(widths.begin(), widths.end(),
                                   [&](double w) { return w == widths.front(); });
    if (!equal) {
      throw Error(ErrorCode::InvalidParameter,
                  "automatic waist tuning requires equal funnel widths");
    }
    std::fill(lengths.begin() + 1, lengths.end() - 1, 1.5 * widths.front());
    tune_inner_lengths(widths, lengths);
  }

  std::ostringstream label;
  label << "nfunnel(";
  for (std::size_t i = 0; i < n; ++i) label << (i ? "," : "") << widths[i];
  label << ")";
  auto data = SchottkyData::from_generators(chain_generators(widths, lengths), label.str());
  if (validation == Validation::enforce) require_valid(data);
  return data;
}

std::vector<std::pair<double, double>> waist_length_pairs(const SchottkyData& data) {
  std::vector<std::pair<double, double>> out;
  for (int k = 2; k < data.q(); ++k) {
    out.emplace_back(data.generator(k).translation_length(),
                     waist_length(data.generator(k - 1), data.generator(k + 1)));
  }
  return out;
}

SchottkyData funneled_torus(double l1, double l2, double phi, double rotation_angle,
                            Validation validation) {
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(phi > 0.0 && phi < std::numbers::pi)) {
    throw Error(ErrorCode::InvalidParameter, "funneled torus needs l1, l2 > 0, phi in (0, pi)");
  }
  const double ch = std::cosh(0.5 * l2);
  const double sh = std::sinh(0.5 * l2);
  const MoebiusTransform t1(std::exp(0.5 * l1), 0.0, 0.0, std::exp(-0.5 * l1));
  const double sin_phi = std::sin(phi);
  const MoebiusTransform t2(ch - std::cos(phi) * sh, sin_phi * sin_phi * sh, sh,
                            ch + std::cos(phi) * sh);
  const MoebiusTransform r = rotation(rotation_angle);
  const MoebiusTransform r_inv = rotation(-rotation_angle);

  std::ostringstream label;
  label << "Y(" << l1 << "," << l2 << "," << phi << ")";
  auto data = SchottkyData::from_generators({r * t1 * r_inv, r * t2 * r_inv}, label.str());
  if (validation == Validation::enforce) require_valid(data);
  return data;
}

}  // namespace resonance
