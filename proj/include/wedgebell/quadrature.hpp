#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "wedgebell/kernels.hpp"
#include "wedgebell/test_functions.hpp"

namespace wedgebell {

enum class QuadMethod { QuasiMonteCarlo, AdaptiveSubdivision };

QuadMethod parse_quad_method(std::string_view name);
std::string_view to_string(QuadMethod method);

struct QuadConfig {
  QuadMethod method = QuadMethod::QuasiMonteCarlo;
  std::uint64_t max_evals = 1u << 20;
  double target_rel_error = 1e-3;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless max_evals >= 1000 and
  /// 0 < target_rel_error < 1.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::uint64_t evals = 0;
  /// error_estimate <= target_rel_error * |value| when the integral finished.
  bool converged = true;
};

/// Integrand on the open unit cube. Must be safe to call concurrently.
using UnitIntegrand = std::function<double(std::span<const double>)>;

/// Number of independently scrambled QMC replicas behind every estimate.
inline constexpr int kQmcReplicas = 8;
/// Points per deterministic accumulation block.
inline constexpr std::uint64_t kQmcBlock = 1024;

/// Scrambled-Sobol QMC over [0,1]^dims, parallelised with OpenMP. Block sums
/// are combined in a fixed order, so the result is bit-identical for every
/// thread count and equal to integrate_qmc_serial.
IntegralResult integrate_qmc(const UnitIntegrand& f, int dims, const QuadConfig& cfg);

/// Single-threaded reference for integrate_qmc.
IntegralResult integrate_qmc_serial(const UnitIntegrand& f, int dims, const QuadConfig& cfg);

/// Adaptive bisection with a tensor Gauss-Legendre 3-point/2-point pair per cell.
IntegralResult integrate_adaptive(const UnitIntegrand& f, int dims, const QuadConfig& cfg);

/// Dispatches on cfg.method.
IntegralResult integrate(const UnitIntegrand& f, int dims, const QuadConfig& cfg);

/// A smearing function together with a box outside which it vanishes.
struct SmearingRegion {
  std::function<double(Event1p1)> fn;
  Rectangle box;
};

/// Integral of f(x) K(x - y) g(y) over f.box x g.box for an arbitrary kernel.
IntegralResult kernel_pairing(const SmearingRegion& f, const SmearingRegion& g,
                              const std::function<double(Event1p1)>& kernel,
                              const QuadConfig& cfg);

/// Radius beyond which the Gaussian damping of a wedge bump is below e^{-42}.
/// The integration domain of a bump is its support clipped at this depth.
inline constexpr double kGaussianRadius = 6.5;

/// Smeared Hadamard pairing H(f, g).
IntegralResult hadamard_inner(const WedgeBumpParams& f, const WedgeBumpParams& g, Mass m,
                              KernelConvention conv, const QuadConfig& cfg);

/// Smeared Pauli-Jordan pairing Delta_PJ(f, g).
IntegralResult pj_inner(const WedgeBumpParams& f, const WedgeBumpParams& g, Mass m,
                        const QuadConfig& cfg);

/// Alice's (f, f') right-wedge and Bob's (g, g') left-wedge test functions.
struct BellTestFunctions {
  WedgeBumpParams f, f_prime, g, g_prime;
};

struct WeylChshResult {
  IntegralResult chsh;
  /// Keys: ff, fpfp, gg, gpgp, fg, fpg, fgp, fpgp.
  std::map<std::string, IntegralResult> inner_products;
};

/// CHSH combination of four Weyl-operator vacuum expectations built from
/// numerically integrated Hadamard products. Each distinct product is
/// integrated once; the error estimate is propagated to first order.
/// Throws std::invalid_argument if f, f' are not right-wedge or g, g' not
/// left-wedge.
WeylChshResult chsh_weyl_numeric(const BellTestFunctions& tf, Mass m, KernelConvention conv,
                                 const QuadConfig& cfg);

/// CHSH value from already computed products, keyed as in WeylChshResult.
double chsh_from_inner_products(const std::map<std::string, double>& h);

}  // namespace wedgebell
