#include "wedgebell/kernels.hpp"

#include <cmath>
#include <numbers>

namespace wedgebell {

KernelConvention parse_convention(std::string_view name) {
  if (name == "paper") return KernelConvention::Paper;
  if (name == "standard") return KernelConvention::Standard;
  throw std::invalid_argument("unknown kernel convention '" + std::string(name) +
                              "' (expected paper|standard)");
}

std::string_view to_string(KernelConvention conv) {
  return conv == KernelConvention::Paper ? "paper" : "standard";
}

double pauli_jordan(Event1p1 e, Mass m) {
  const double lam = interval(e);
  if (!(lam > 0.0) || e.t == 0.0) return 0.0;
  const double sign = e.t > 0.0 ? 1.0 : -1.0;
  return -0.5 * sign * std::cyl_bessel_j(0.0, m.value() * std::sqrt(lam));
}

double hadamard_or_zero(Event1p1 e, Mass m, KernelConvention conv) noexcept {
  const double lam = interval(e);
  double value = 0.0;
  if (lam > 0.0) {
    value = -0.5 * std::cyl_neumann(0.0, m.value() * std::sqrt(lam));
  } else if (lam < 0.0) {
    value = std::numbers::inv_pi * std::cyl_bessel_k(0.0, m.value() * std::sqrt(-lam));
  }
  return conv == KernelConvention::Standard ? 0.5 * value : value;
}

std::optional<double> hadamard(Event1p1 e, Mass m, KernelConvention conv) {
  if (interval(e) == 0.0) return std::nullopt;
  return hadamard_or_zero(e, m, conv);
}

std::optional<std::complex<double>> wightman(Event1p1 e, Mass m, KernelConvention conv) {
  const auto h = hadamard(e, m, conv);
  if (!h) return std::nullopt;
  return std::complex<double>(*h, 0.5 * pauli_jordan(e, m));
}

}  // namespace wedgebell
