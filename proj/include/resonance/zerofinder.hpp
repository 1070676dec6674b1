#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resonance/linalg.hpp"
#include "resonance/transfer.hpp"

namespace resonance {

/// Evaluates Z(s) as log-modulus and phase. Must be safe to call concurrently.
using ZetaFunction = std::function<ScaledComplex(cplx)>;

ZetaFunction zeta_function(const StaticParts& parts);

struct SearchWindow {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -10.0;
  double im_max = 10.0;

  bool valid() const { return re_min < re_max && im_min < im_max; }
  bool contains(cplx s, double margin = 0.0) const {
    return s.real() >= re_min - margin && s.real() <= re_max + margin &&
           s.imag() >= im_min - margin && s.imag() <= im_max + margin;
  }
};

struct NewtonOptions {
  double step_tol = 1e-10;
  double zero_tol = 1e-9;         // bound on the scale-free residual
  int max_iter = 100;
  double fd_step = 1e-6;          // h = fd_step * (1 + |s|)
  double residual_radius = 1e-2;  // circle used to normalize |Z|
  double window_margin = 1.0;     // iterates further outside the window diverge
};

/// |Z(s)| divided by max |Z| at four points on the circle |z - s| = radius.
/// Independent of the overall scale of Z.
double scale_free_residual(const ZetaFunction& zeta, cplx s, double radius);

struct Resonance {
  cplx s;
  double residual = 0.0;
  std::optional<int> multiplicity;
  bool topological = false;  // within tolerance of a nonpositive integer
  cplx seed;
};

enum class Divergence { none, not_finite, left_window, max_iter };

struct NewtonOutcome {
  std::optional<Resonance> resonance;  // empty when the seed produced nothing
  Divergence divergence = Divergence::none;
  int iterations = 0;
};

/// s <- s - Z(s) 2h / (Z(s + h) - Z(s - h)) on Z rescaled by the modulus at the
/// current iterate. Converges when |step| < step_tol and the residual is below
/// zero_tol. When steps stall at the rounding floor (typical for multiple
/// zeros) the best iterate is still accepted if its residual passes.
NewtonOutcome newton_refine(const ZetaFunction& zeta, cplx seed, const NewtonOptions& options,
                            const SearchWindow& window);

struct ResonanceSet {
  std::string label;
  int order = 0;
  int level = 0;
  SearchWindow window;
  std::vector<Resonance> resonances;  // Re s descending, then Im s ascending
};

/// Drops entries closer than tol (1 + |s|) to an earlier entry, keeping the one
/// with the smaller residual, then sorts.
std::vector<Resonance> dedup(std::vector<Resonance> zeros, double tol);

/// Newton from c + i m spacing for every integer m with the seed inside
/// [im_min, im_max]; converged zeros inside the window, deduplicated.
std::vector<Resonance> scan_line(const ZetaFunction& zeta, double c, double im_min, double im_max,
                                 double spacing, const SearchWindow& window,
                                 const NewtonOptions& options, double dedup_tol);

/// Winding number of Z around |z - s0| = radius from `points` samples.
/// Throws AmbiguousWinding if the total is more than 0.2 from an integer.
int multiplicity(const ZetaFunction& zeta, cplx s0, double radius, int points);

/// Mean of the zeros inside |z - center| = radius, counted with multiplicity,
/// from the e^{-i theta} Fourier coefficient of log Z on the circle.
cplx zero_centroid(const ZetaFunction& zeta, cplx center, double radius, int points,
                   int winding);

/// Largest real zero of a real-valued Z: scans down from `hi` in steps of
/// `step` until Z changes sign, then bisects to `tol`. Empty if no sign change
/// is found above `lo`.
std::optional<double> largest_real_zero(const ZetaFunction& zeta, double lo, double hi,
                                        double step = 0.01, double tol = 1e-12);

struct SearchOptions {
  SearchWindow window;
  std::vector<double> seed_re;  // empty: largest real zero + 0.1
  double seed_spacing = 0.05;
  NewtonOptions newton;
  double dedup_tol = 1e-6;
  bool multiplicity = true;
  double multiplicity_radius = 1e-3;
  int multiplicity_points = 64;
  double topological_tol = 1e-6;
};

/// scan_line over every seed line, multiplicities (with centroid refinement of
/// multiple zeros) and topological flags. Deterministic for fixed options.
ResonanceSet find_resonances(const StaticParts& parts, const SearchOptions& options);
ResonanceSet find_resonances(const SchottkyData& data, int order, int level,
                             const SearchOptions& options,
                             const TransferOptions& transfer = {});

}  // namespace resonance
