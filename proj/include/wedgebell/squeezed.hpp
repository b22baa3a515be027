#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace wedgebell {

/// Bell angles (alpha, alpha', beta, beta') in radians.
struct BellAngles {
  double alpha = 0.0;
  double alpha_prime = 0.0;
  double beta = 0.0;
  double beta_prime = 0.0;
};

/// Angles giving the maximal quantum violation 2 sqrt(2).
BellAngles maximal_bell_angles();

/// Two-mode squeezed state truncated to K complete even/odd pairs per mode
/// (basis n = 0 .. 2K-1).
struct FockConfig {
  std::size_t pair_count = 1;
  double lambda = 0.0;
  BellAngles angles;

  void validate() const;
  std::size_t basis_size() const { return 2 * pair_count; }
};

struct StateCoefficients {
  /// c_n = sqrt(1 - lambda^2) lambda^n, not renormalised after truncation.
  std::vector<double> c;
  /// Weight of the discarded tail, lambda^{4K}.
  double norm_deficit = 0.0;
};

StateCoefficients state_coefficients(const FockConfig& cfg);

enum class Party { Alice, Bob };

struct BasisImage {
  std::size_t index;
  std::complex<double> phase;
};

/// Action of the dichotomic operator with angle theta on basis state |n>:
/// |2k> -> e^{i theta} |2k+1>, |2k+1> -> e^{-i theta} |2k>. The operator has
/// the same form for either party and either setting; they differ only in
/// the angle they carry.
BasisImage dichotomic_action(Party party, bool primed, double angle, std::size_t n);

/// <Omega| A(angle_a) (x) B(angle_b) |Omega> on the truncated space.
double correlator_ab(const FockConfig& cfg, double angle_a, double angle_b);

double chsh_squeezed(const FockConfig& cfg);

/// Untruncated limit: 2 lambda / (1 + lambda^2) times the QM CHSH sum. lambda in [0, 1].
double chsh_analytic(double lambda, const BellAngles& angles);

}  // namespace wedgebell
