#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "wedgebell/modular.hpp"

namespace wedgebell {

/// Tolerance settings for the deterministic semi-infinite quadratures below.
struct BoundedQuadConfig {
  double rel_tol = 1e-10;
  unsigned max_depth = 15;

  void validate() const;
};

/// Coefficients of the Gaussian form k^2 s11 + p^2 s22 + 2 k p s12, i.e. the
/// Hadamard Gram matrix of the two smearing functions.
struct GaussianFormCoeffs {
  double s11 = 0.0;
  double s22 = 0.0;
  double s12 = 0.0;

  /// Throws unless s11, s22 >= 0 and s12^2 <= s11 s22 (up to rounding).
  void validate() const;
};

/// Vacuum expectation of Q = 1/(1 + phi(h)^2) for ||h||^2 = s11:
/// 1/2 int dk e^{-|k|} e^{-k^2 s11 / 2}.
double qtilde_single(double s11, const BoundedQuadConfig& cfg = {});

/// Two-point function <Q_h Q_h'>:
/// 1/4 int dk dp e^{-|k|-|p|} e^{-(k^2 s11 + p^2 s22 + 2 k p s12)/2}.
double qtilde_pair(const GaussianFormCoeffs& c, const BoundedQuadConfig& cfg = {});

/// CHSH combination of the Q operators for the spectral test functions
/// f, f' (Alice) and jf, jf' (Bob).
double chsh_bounded(const SpectralParams& p, const BoundedQuadConfig& cfg = {});

/// Evenly spaced inclusive grid lo, ..., hi with n nodes (n = 1 gives lo).
struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 1;

  double at(std::size_t i) const;
  void validate() const;
};

/// Parses "lo:hi:n".
GridRange parse_grid_range(std::string_view text);

struct SurfaceRow {
  double eta;
  double eta_prime;
  double chsh;
};

/// chsh_bounded at every (eta, eta') node, eta-major order. Nodes are
/// evaluated in parallel; output order and values do not depend on threads.
std::vector<SurfaceRow> surface_grid(double lambda, const GridRange& eta, const GridRange& eta_prime,
                                     const BoundedQuadConfig& cfg = {});

}  // namespace wedgebell
