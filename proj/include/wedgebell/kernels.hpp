#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace wedgebell {

/// Field mass in natural units (hbar = c = 1). Always strictly positive.
class Mass {
public:
  explicit Mass(double m) : value_(m) {
    if (!(m > 0.0)) throw std::invalid_argument("mass must be > 0");
  }
  double value() const { return value_; }

private:
  double value_;
};

/// A point (t, x) of 1+1 dimensional Minkowski spacetime.
struct Event1p1 {
  double t = 0.0;
  double x = 0.0;
};

inline Event1p1 operator-(Event1p1 a, Event1p1 b) { return {a.t - b.t, a.x - b.x}; }

/// Overall scale of the Hadamard kernel.
///
/// Paper: -1/2 Y0 (timelike) and 1/pi K0 (spacelike).
/// Standard: half of that, i.e. the textbook symmetric part of the 2d
/// Wightman function, -1/4 Y0 and 1/(2 pi) K0.
enum class KernelConvention { Paper, Standard };

KernelConvention parse_convention(std::string_view name);
std::string_view to_string(KernelConvention conv);

/// Minkowski interval t^2 - x^2 (positive for timelike separations).
constexpr double interval(Event1p1 e) { return e.t * e.t - e.x * e.x; }

/// Pauli-Jordan commutator kernel -1/2 sign(t) theta(lambda) J0(m sqrt(lambda)).
/// sign(0) and theta(0) are taken to be 0, so the function is total.
double pauli_jordan(Event1p1 e, Mass m);

/// Hadamard kernel. Returns std::nullopt exactly on the light cone, where the
/// kernel has a logarithmic singularity.
std::optional<double> hadamard(Event1p1 e, Mass m, KernelConvention conv = KernelConvention::Paper);

/// Hadamard kernel with the light cone mapped to 0; for use inside integrands.
double hadamard_or_zero(Event1p1 e, Mass m, KernelConvention conv) noexcept;

/// Wightman function H + (i/2) Delta_PJ; nullopt on the light cone.
std::optional<std::complex<double>> wightman(Event1p1 e, Mass m,
                                             KernelConvention conv = KernelConvention::Paper);

}  // namespace wedgebell
