#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bessel_oracle.hpp"
#include "wedgebell/kernels.hpp"

using namespace wedgebell;
using doctest::Approx;

TEST_CASE("interval examples") {
  CHECK(interval({1, 1}) == 0.0);
  CHECK(interval({2, 1}) == 3.0);
  CHECK(interval({0, 3}) == -9.0);
}

TEST_CASE("pauli_jordan examples") {
  const Mass m(1.0);
  CHECK(pauli_jordan({1, 2}, m) == 0.0);
  CHECK(pauli_jordan({0, 0.5}, m) == 0.0);
  // -1/2 J0(sqrt 3), J0 from its series
  const double expected = -0.5 * static_cast<double>(oracle::j0_series(std::sqrt(3.0L)));
  CHECK(pauli_jordan({2, 1}, m) == Approx(expected).epsilon(1e-12));
  CHECK(pauli_jordan({2, 1}, m) == Approx(-0.189719712521446).epsilon(1e-12));
}

TEST_CASE("hadamard examples") {
  const Mass m(1.0);
  const double k0_1 = static_cast<double>(oracle::k0_series(1.0L));
  CHECK(*hadamard({0, 1}, m, KernelConvention::Paper) == Approx(k0_1 / std::numbers::pi).epsilon(1e-12));
  CHECK(*hadamard({0, 1}, m, KernelConvention::Paper) == Approx(0.134016241016994).epsilon(1e-12));
  CHECK(*hadamard({2, 1}, m, KernelConvention::Paper) ==
        Approx(-0.5 * static_cast<double>(oracle::y0_series(std::sqrt(3.0L)))).epsilon(1e-12));
  CHECK(*hadamard({2, 1}, m, KernelConvention::Paper) == Approx(-0.230417742229771).epsilon(1e-12));
  CHECK(*hadamard({0, 1}, m, KernelConvention::Standard) == Approx(0.0670081205084971).epsilon(1e-12));
}

TEST_CASE("hadamard signals the light cone") {
  const Mass m(0.3);
  CHECK_FALSE(hadamard({1, 1}, m).has_value());
  CHECK_FALSE(hadamard({-2, 2}, m).has_value());
  CHECK_FALSE(wightman({0, 0}, m).has_value());
  CHECK(hadamard_or_zero({1, -1}, m, KernelConvention::Paper) == 0.0);
}

TEST_CASE("wightman combines both kernels") {
  const Mass m(1.0);
  const auto space = *wightman({0, 1}, m);
  CHECK(space.real() == Approx(0.134016241016994).epsilon(1e-12));
  CHECK(space.imag() == 0.0);

  const auto future = *wightman({2, 1}, m);
  CHECK(future.real() == Approx(-0.230417742229771).epsilon(1e-12));
  CHECK(future.imag() == Approx(-0.25 * 0.379439425042892).epsilon(1e-12));

  const auto past = *wightman({-2, 1}, m);
  CHECK(past == std::conj(future));
}

TEST_CASE("mass must be positive") {
  CHECK_THROWS_AS(Mass(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Mass(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Mass(std::nan("")), std::invalid_argument);
}

TEST_CASE("convention parsing") {
  CHECK(parse_convention("paper") == KernelConvention::Paper);
  CHECK(parse_convention("standard") == KernelConvention::Standard);
  CHECK_THROWS_AS(parse_convention("textbook"), std::invalid_argument);
}

// The kernels ride on the standard library's special functions; they must
// hold ten significant digits on (0, 1000].
TEST_CASE("Bessel accuracy against series and asymptotic oracles") {
  const Mass unit(1.0);
  // (x, 0) is timelike with sqrt(lambda) = x; (0, x) is spacelike.
  for (double x : {1e-3, 0.1, 0.5, 1.0, 2.5, 5.0, 8.0, 11.0}) {
    CAPTURE(x);
    CHECK(-2.0 * pauli_jordan({x, 0.0}, unit) ==
          Approx(static_cast<double>(oracle::j0_series(x))).epsilon(1e-10).scale(1e-3));
    CHECK(-2.0 * *hadamard({x, 0.0}, unit) ==
          Approx(static_cast<double>(oracle::y0_series(x))).epsilon(1e-10).scale(1e-3));
  }
  for (double x : {1e-3, 0.1, 0.7, 1.5, 2.0}) {
    CAPTURE(x);
    CHECK(std::numbers::pi * *hadamard({0.0, x}, unit) ==
          Approx(static_cast<double>(oracle::k0_series(x))).epsilon(1e-10));
  }
  for (double x : {25.0, 60.0, 140.0, 333.0, 700.0, 1000.0}) {
    CAPTURE(x);
    long double j0, y0;
    oracle::jy0_asymptotic(x, j0, y0);
    CHECK(-2.0 * pauli_jordan({x, 0.0}, unit) == Approx(static_cast<double>(j0)).epsilon(1e-10).scale(1e-2));
    CHECK(-2.0 * *hadamard({x, 0.0}, unit) == Approx(static_cast<double>(y0)).epsilon(1e-10).scale(1e-2));
  }
  for (double x : {25.0, 60.0, 140.0, 333.0, 700.0}) {
    CAPTURE(x);
    CHECK(std::numbers::pi * *hadamard({0.0, x}, unit) ==
          Approx(static_cast<double>(oracle::k0_asymptotic(x))).epsilon(1e-10));
  }
}

TEST_CASE("Bessel accuracy against frozen arbitrary-precision values") {
  struct Row {
    double x, j0, y0, k0;
  };
  // 30-digit reference values
  const Row rows[] = {
      {0.001, 0.999999750000015625, -4.4714166113759232557, 7.0236888005623813228},
      {0.5, 0.93846980724081290423, -0.44451873350670655715, 0.92441907122766586178},
      {3.7, -0.39923020337119111533, 0.10607431532035411027, 0.015630659921626658481},
      {15.0, -0.014224472826780773234, 0.20546429603891826479, 9.819536482396434541e-8},
      {77.0, 0.062379777089647414219, 0.066154201703924864373, 5.1693860109733707296e-35},
      {500.0, -0.034100556880731998265, 0.0105067087398313741, 3.9923216091177928774e-219},
      {1000.0, 0.024786686152420174561, 0.0047159179776228133998, 0.0},
  };
  const Mass unit(1.0);
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(-2.0 * pauli_jordan({r.x, 0.0}, unit) == Approx(r.j0).epsilon(1e-10));
    CHECK(-2.0 * *hadamard({r.x, 0.0}, unit) == Approx(r.y0).epsilon(1e-10));
    CHECK(std::numbers::pi * *hadamard({0.0, r.x}, unit) == Approx(r.k0).epsilon(1e-10));
  }
}

namespace {
struct KernelSampler {
  std::mt19937_64 rng{2024};
  std::uniform_real_distribution<double> coord{-5.0, 5.0};
  std::uniform_real_distribution<double> mass{0.01, 3.0};
  Event1p1 event() { return {coord(rng), coord(rng)}; }
  Mass m() { return Mass(mass(rng)); }
};
}  // namespace

TEST_CASE("property: Pauli-Jordan is odd in time and vanishes at spacelike separation") {
  KernelSampler s;
  for (int i = 0; i < 2000; ++i) {
    const Event1p1 e = s.event();
    const Mass m = s.m();
    CHECK(pauli_jordan(e, m) == -pauli_jordan({-e.t, e.x}, m));
    if (interval(e) < 0.0) CHECK(pauli_jordan(e, m) == 0.0);
  }
}

TEST_CASE("property: Hadamard parity and convention scaling") {
  KernelSampler s;
  for (int i = 0; i < 2000; ++i) {
    const Event1p1 e = s.event();
    const Mass m = s.m();
    const auto h = hadamard(e, m);
    REQUIRE(h.has_value());
    CHECK(*hadamard({e.t, -e.x}, m) == *h);
    CHECK(*hadamard({-e.t, e.x}, m) == *h);
    CHECK(*hadamard(e, m, KernelConvention::Standard) == 0.5 * *h);
  }
}

TEST_CASE("property: Pauli-Jordan solves Klein-Gordon inside the cone") {
  KernelSampler s;
  const double h = 1e-3;
  int checked = 0;
  while (checked < 1000) {
    const Event1p1 e = s.event();
    const Mass m = s.m();
    // keep the 5-point stencil off the cone
    if (!(interval(e) > 0.5) || std::abs(e.t) - std::abs(e.x) < 4 * h) continue;
    auto pj = [&](double dt, double dx) { return pauli_jordan({e.t + dt, e.x + dx}, m); };
    const double d2t = (pj(h, 0) - 2 * pj(0, 0) + pj(-h, 0)) / (h * h);
    const double d2x = (pj(0, h) - 2 * pj(0, 0) + pj(0, -h)) / (h * h);
    const double mv = m.value();
    CHECK(std::abs(d2t - d2x + mv * mv * pj(0, 0)) < 1e-3);
    ++checked;
  }
}
