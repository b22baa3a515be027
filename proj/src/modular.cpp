#include "wedgebell/modular.hpp"

#include <cmath>
#include <stdexcept>

namespace wedgebell {

void SpectralParams::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be >= 0");
  if (!(eta_prime >= 0.0) || !std::isfinite(eta_prime)) {
    throw std::invalid_argument("eta_prime must be >= 0");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
}

bool ProductSet::consistent() const {
  constexpr double slack = 1e-12;
  return norm2_f >= 0.0 && norm2_fp >= 0.0 &&
         std::abs(cross_f) <= norm2_f * (1 + slack) &&
         std::abs(cross_fp) <= norm2_fp * (1 + slack) &&
         cross_mixed * cross_mixed <= norm2_f * norm2_fp * (1 + slack);
}

ProductSet spectral_products(const SpectralParams& p) {
  p.validate();
  const double l2 = p.lambda * p.lambda;
  const double e2 = p.eta * p.eta;
  const double ep2 = p.eta_prime * p.eta_prime;
  return {e2 * (1.0 + l2), ep2 * (1.0 + l2), 2.0 * e2 * p.lambda, 2.0 * ep2 * p.lambda, 0.0};
}

double weyl_chsh_from_products(const ProductSet& s) {
  // ||u + v||^2 = ||u||^2 + ||v||^2 + 2<u|v>, with ||jf|| = ||f||.
  const double f_jf = 2.0 * s.norm2_f + 2.0 * s.cross_f;
  const double fp_jf = s.norm2_fp + s.norm2_f + 2.0 * s.cross_mixed;
  const double f_jfp = s.norm2_f + s.norm2_fp + 2.0 * s.cross_mixed;
  const double fp_jfp = 2.0 * s.norm2_fp + 2.0 * s.cross_fp;
  return std::exp(-0.5 * f_jf) + std::exp(-0.5 * fp_jf) + std::exp(-0.5 * f_jfp) -
         std::exp(-0.5 * fp_jfp);
}

double weyl_chsh_closed_form(const SpectralParams& p) {
  p.validate();
  const double e2 = p.eta * p.eta;
  const double ep2 = p.eta_prime * p.eta_prime;
  const double up = (1.0 + p.lambda) * (1.0 + p.lambda);
  return std::exp(-e2 * up) + 2.0 * std::exp(-0.5 * (e2 + ep2) * (1.0 + p.lambda * p.lambda)) -
         std::exp(-ep2 * up);
}

double qm_chsh(double alpha, double alpha_prime, double beta, double beta_prime) {
  return std::cos(alpha + beta) + std::cos(alpha_prime + beta) + std::cos(alpha + beta_prime) -
         std::cos(alpha_prime + beta_prime);
}

}  // namespace wedgebell
