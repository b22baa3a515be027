#include "wedgebell/bounded.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wedgebell {

using boost::math::quadrature::gauss_kronrod;

void BoundedQuadConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("rel_tol must lie in (0, 1)");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
}

void GaussianFormCoeffs::validate() const {
  if (!(s11 >= 0.0) || !(s22 >= 0.0)) throw std::invalid_argument("s11 and s22 must be >= 0");
  if (s12 * s12 > s11 * s22 * (1.0 + 1e-12)) {
    throw std::invalid_argument("s12^2 must not exceed s11 * s22");
  }
}

// The half-line k in [0, inf) is mapped by k = -ln(u), u in (0, 1]; the weight
// e^{-k} dk becomes du, leaving e^{-s ln(u)^2 / 2} on the unit interval.

double qtilde_single(double s11, const BoundedQuadConfig& cfg) {
  if (!(s11 >= 0.0)) throw std::invalid_argument("s11 must be >= 0");
  cfg.validate();
  if (s11 == 0.0) return 1.0;
  auto integrand = [s11](double u) {
    if (u <= 0.0) return 0.0;
    const double k = std::log(u);
    return std::exp(-0.5 * s11 * k * k);
  };
  // 1/2 * (two equal half-lines)
  return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, cfg.max_depth, cfg.rel_tol);
}

namespace {

// e^{x^2} erfc(x) for x >= 0.
double erfcx(double x) {
  if (x < 26.0) return std::exp(x * x) * std::erfc(x);
  const double r = 1.0 / (x * x);
  return (1.0 - 0.5 * r + 0.75 * r * r - 1.875 * r * r * r) / (x * std::sqrt(std::numbers::pi));
}

// e^{shift} * int_0^inf e^{-beta p - s22 p^2 / 2} dp, returned as a finite product.
double half_line_gaussian(double beta, double s22, double shift) {
  if (s22 == 0.0) return std::exp(shift) / beta;
  const double scale = std::sqrt(2.0 * s22);
  const double x = beta / scale;
  const double pref = std::sqrt(std::numbers::pi) / scale;
  if (x >= 0.0) return pref * erfcx(x) * std::exp(shift);
  return pref * std::exp(x * x + shift) * std::erfc(x);
}

}  // namespace

double qtilde_pair(const GaussianFormCoeffs& c, const BoundedQuadConfig& cfg) {
  c.validate();
  cfg.validate();
  // Quadrants (+,+) and (-,-) see +s12, (+,-) and (-,+) see -s12; the p
  // integral over the half-line is done in closed form.
  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double k = -std::log(u);
    const double shift = -0.5 * c.s11 * k * k;
    if (c.s22 == 0.0) return std::exp(shift);
    return 0.5 * (half_line_gaussian(1.0 + c.s12 * k, c.s22, shift) +
                  half_line_gaussian(1.0 - c.s12 * k, c.s22, shift));
  };
  return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 1.0, cfg.max_depth, cfg.rel_tol);
}

double chsh_bounded(const SpectralParams& p, const BoundedQuadConfig& cfg) {
  const ProductSet s = spectral_products(p);
  const double same_f = qtilde_pair({s.norm2_f, s.norm2_f, s.cross_f}, cfg);
  // <Q_f' Q_jf> and <Q_f Q_jf'> coincide (equal norms, vanishing mixed
  // product), so the two middle CHSH terms are one integral counted twice.
  const double mixed = qtilde_pair({s.norm2_f, s.norm2_fp, s.cross_mixed}, cfg);
  const double same_fp = qtilde_pair({s.norm2_fp, s.norm2_fp, s.cross_fp}, cfg);
  return same_f + 2.0 * mixed - same_fp;
}

double GridRange::at(std::size_t i) const {
  if (n == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void GridRange::validate() const {
  if (n < 1) throw std::invalid_argument("grid must have at least one node");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("grid bounds must be finite");
  if (n > 1 && !(hi > lo)) throw std::invalid_argument("grid requires hi > lo");
}

GridRange parse_grid_range(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw std::invalid_argument("grid range '" + std::string(text) + "' is not of the form lo:hi:n");
  }
  GridRange g;
  try {
    g.lo = std::stod(std::string(text.substr(0, c1)));
    g.hi = std::stod(std::string(text.substr(c1 + 1, c2 - c1 - 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid range '" + std::string(text) + "' has a non-numeric bound");
  }
  const auto count = text.substr(c2 + 1);
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), g.n);
  if (ec != std::errc() || ptr != count.data() + count.size()) {
    throw std::invalid_argument("grid range '" + std::string(text) + "' has a bad node count");
  }
  g.validate();
  return g;
}

std::vector<SurfaceRow> surface_grid(double lambda, const GridRange& eta, const GridRange& eta_prime,
                                     const BoundedQuadConfig& cfg) {
  eta.validate();
  eta_prime.validate();
  cfg.validate();
  SpectralParams{0.0, 0.0, lambda}.validate();
  const auto total = static_cast<std::int64_t>(eta.n * eta_prime.n);
  std::vector<SurfaceRow> rows(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const auto i = static_cast<std::size_t>(idx) / eta_prime.n;
    const auto j = static_cast<std::size_t>(idx) % eta_prime.n;
    const SpectralParams p{eta.at(i), eta_prime.at(j), lambda};
    rows[static_cast<std::size_t>(idx)] = {p.eta, p.eta_prime, chsh_bounded(p, cfg)};
  }
  return rows;
}

}  // namespace wedgebell
