#include "wedgebell/squeezed.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wedgebell/modular.hpp"

namespace wedgebell {

BellAngles maximal_bell_angles() {
  return {0.0, std::numbers::pi / 2, -std::numbers::pi / 4, std::numbers::pi / 4};
}

void FockConfig::validate() const {
  if (pair_count < 1) throw std::invalid_argument("pair_count must be >= 1");
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1) for a truncated state");
  }
}

StateCoefficients state_coefficients(const FockConfig& cfg) {
  cfg.validate();
  StateCoefficients out;
  out.c.resize(cfg.basis_size());
  const double norm = std::sqrt(1.0 - cfg.lambda * cfg.lambda);
  double power = 1.0;
  for (auto& c : out.c) {
    c = norm * power;
    power *= cfg.lambda;
  }
  // (1 - l^2) sum_{n >= 2K} l^{2n} = l^{4K}
  out.norm_deficit = std::pow(cfg.lambda, 4.0 * static_cast<double>(cfg.pair_count));
  return out;
}

BasisImage dichotomic_action(Party, bool, double angle, std::size_t n) {
  if (n % 2 == 0) return {n + 1, std::polar(1.0, angle)};
  return {n - 1, std::polar(1.0, -angle)};
}

double correlator_ab(const FockConfig& cfg, double angle_a, double angle_b) {
  const StateCoefficients state = state_coefficients(cfg);
  // |Omega> = sum_n c_n |n, n>; A (x) B maps |n, n> to a single |n', n'>.
  std::complex<double> sum = 0.0;
  for (std::size_t n = 0; n < state.c.size(); ++n) {
    const BasisImage a = dichotomic_action(Party::Alice, false, angle_a, n);
    const BasisImage b = dichotomic_action(Party::Bob, false, angle_b, n);
    if (a.index != b.index) continue;
    sum += state.c[a.index] * state.c[n] * a.phase * b.phase;
  }
  return sum.real();
}

double chsh_squeezed(const FockConfig& cfg) {
  const BellAngles& a = cfg.angles;
  return correlator_ab(cfg, a.alpha, a.beta) + correlator_ab(cfg, a.alpha_prime, a.beta) +
         correlator_ab(cfg, a.alpha, a.beta_prime) - correlator_ab(cfg, a.alpha_prime, a.beta_prime);
}

double chsh_analytic(double lambda, const BellAngles& angles) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
  return 2.0 * lambda / (1.0 + lambda * lambda) *
         qm_chsh(angles.alpha, angles.alpha_prime, angles.beta, angles.beta_prime);
}

}  // namespace wedgebell
