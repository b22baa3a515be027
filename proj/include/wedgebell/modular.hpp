#pragma once

namespace wedgebell {

/// Test-function data picked from a narrow spectral subspace of the modular
/// operator: norms set by (eta, eta'), correlation with the modular conjugate
/// set by lambda in [0, 1].
struct SpectralParams {
  double eta = 0.0;
  double eta_prime = 0.0;
  double lambda = 0.0;

  void validate() const;
};

/// Inner products among f, f' and their modular conjugates jf, jf'.
struct ProductSet {
  double norm2_f = 0.0;      // ||f||^2 = ||jf||^2
  double norm2_fp = 0.0;     // ||f'||^2 = ||jf'||^2
  double cross_f = 0.0;      // <f|jf>
  double cross_fp = 0.0;     // <f'|jf'>
  double cross_mixed = 0.0;  // <f|jf'> = <f'|jf>

  /// Cauchy-Schwarz consistency, with a small relative slack for rounding.
  bool consistent() const;
};

ProductSet spectral_products(const SpectralParams& p);

/// e^{-||f+jf||^2/2} + e^{-||f'+jf||^2/2} + e^{-||f+jf'||^2/2} - e^{-||f'+jf'||^2/2}
double weyl_chsh_from_products(const ProductSet& s);

/// Closed form of weyl_chsh_from_products(spectral_products(p)).
double weyl_chsh_closed_form(const SpectralParams& p);

/// Quantum-mechanical spin-1/2 CHSH: cos(a+b) + cos(a'+b) + cos(a+b') - cos(a'+b').
double qm_chsh(double alpha, double alpha_prime, double beta, double beta_prime);

}  // namespace wedgebell
