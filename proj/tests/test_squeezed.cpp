#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wedgebell/squeezed.hpp"

using namespace wedgebell;
using doctest::Approx;
using std::numbers::pi;

TEST_CASE("state_coefficients examples") {
  const auto vac = state_coefficients({3, 0.0, {}});
  CHECK(vac.c[0] == 1.0);
  for (std::size_t n = 1; n < vac.c.size(); ++n) CHECK(vac.c[n] == 0.0);

  const auto s = state_coefficients({2, 0.5, {}});
  REQUIRE(s.c.size() == 4);
  const double norm = std::sqrt(0.75);
  CHECK(s.c[0] == Approx(norm).epsilon(1e-15));
  CHECK(s.c[1] == Approx(norm * 0.5).epsilon(1e-15));
  CHECK(s.c[2] == Approx(norm * 0.25).epsilon(1e-15));
  CHECK(s.c[3] == Approx(norm * 0.125).epsilon(1e-15));
  CHECK(s.norm_deficit == Approx(0.00390625).epsilon(1e-15));
}

TEST_CASE("FockConfig validation") {
  CHECK_THROWS_AS(state_coefficients({0, 0.5, {}}), std::invalid_argument);
  CHECK_THROWS_AS(state_coefficients({2, 1.0, {}}), std::invalid_argument);
  CHECK_THROWS_AS(state_coefficients({2, -0.1, {}}), std::invalid_argument);
  CHECK_THROWS_AS(chsh_analytic(1.01, maximal_bell_angles()), std::invalid_argument);
}

TEST_CASE("dichotomic_action examples") {
  const auto a = dichotomic_action(Party::Alice, false, 0.0, 0);
  CHECK(a.index == 1);
  CHECK(a.phase == std::complex<double>(1.0, 0.0));

  const auto b = dichotomic_action(Party::Alice, false, pi / 2, 1);
  CHECK(b.index == 0);
  CHECK(b.phase.real() == Approx(0.0).epsilon(1e-15).scale(1.0));
  CHECK(b.phase.imag() == Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("property: the dichotomic operators are involutions") {
  for (const Party party : {Party::Alice, Party::Bob}) {
    for (const bool primed : {false, true}) {
      for (double angle : {0.0, 0.3, -1.7, pi / 4, 2.9}) {
        for (std::size_t n = 0; n < 64; ++n) {
          const auto once = dichotomic_action(party, primed, angle, n);
          CHECK(once.index < 64);
          CHECK(std::abs(std::abs(once.phase) - 1.0) < 1e-15);
          const auto twice = dichotomic_action(party, primed, angle, once.index);
          const auto phase = once.phase * twice.phase;
          CHECK(twice.index == n);
          CHECK(std::abs(phase - 1.0) < 1e-15);
        }
      }
    }
  }
}

TEST_CASE("correlator_ab examples") {
  CHECK(correlator_ab({4, 0.0, {}}, 0.3, 0.9) == 0.0);
  CHECK(correlator_ab({32, 0.5, {}}, 0.0, 0.0) == Approx(0.8).epsilon(1e-15));
  CHECK(correlator_ab({1, 0.5, {}}, 0.0, 0.0) == Approx(0.75).epsilon(1e-15));
  CHECK(correlator_ab({32, 0.5, {}}, 0.4, -0.1) == Approx(0.8 * std::cos(0.3)).epsilon(1e-14));
}

TEST_CASE("chsh_squeezed examples") {
  const FockConfig bell{32, 0.5, maximal_bell_angles()};
  CHECK(chsh_squeezed(bell) == Approx(2.0 * std::sqrt(2.0) * 0.8).epsilon(1e-14));
  CHECK(chsh_squeezed({8, 0.0, maximal_bell_angles()}) == 0.0);
  const double l = 0.6;
  CHECK(chsh_squeezed({64, l, {}}) == Approx(2.0 * l / (1 + l * l) * 2.0).epsilon(1e-14));
}

TEST_CASE("chsh_analytic examples") {
  CHECK(std::abs(chsh_analytic(1.0, maximal_bell_angles()) - 2.0 * std::sqrt(2.0)) < 1e-12);
  CHECK(chsh_analytic(0.0, maximal_bell_angles()) == 0.0);
  const double l = 0.495456;
  CHECK(chsh_analytic(l, maximal_bell_angles()) == Approx(2.0 * std::sqrt(2.0) * 2 * l / (1 + l * l)).epsilon(1e-14));
  CHECK(chsh_analytic(l, maximal_bell_angles()) == Approx(2.25032109889909).epsilon(1e-12));
}

TEST_CASE("property: truncated CHSH converges geometrically") {
  const double l = 0.9;
  const BellAngles angles = maximal_bell_angles();
  double prev = 1e9;
  for (std::size_t k : {4u, 8u, 16u}) {
    const double gap = std::abs(chsh_squeezed({k, l, angles}) - chsh_analytic(l, angles));
    CHECK(gap <= 2.0 * std::sqrt(2.0) * std::pow(l, 4.0 * k - 3.0));
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("property: state normalisation including the discarded tail") {
  for (double l : {0.0, 0.1, 0.5, 0.9, 0.99}) {
    for (std::size_t k : {1u, 3u, 10u, 50u}) {
      const auto s = state_coefficients({k, l, {}});
      double sum = 0.0;
      for (double c : s.c) sum += c * c;
      CHECK(std::abs(sum + s.norm_deficit - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("property: analytic bound and monotone prefactor") {
  const double tsirelson = 2.0 * std::sqrt(2.0);
  for (int i = 0; i <= 100; ++i) {
    const double l = i / 100.0;
    for (double a : {0.0, 0.7, -2.0}) {
      for (double b : {0.1, pi / 3}) {
        CHECK(std::abs(chsh_analytic(l, {a, a + 1.0, b, b - 0.5})) <= tsirelson + 1e-12);
      }
    }
  }
  CHECK(chsh_analytic(0.999, maximal_bell_angles()) < tsirelson);
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = chsh_analytic(i / 1000.0, {0.0, 0.0, 0.0, 0.0}) / 2.0;
    CHECK(v > prev);
    prev = v;
  }
}
