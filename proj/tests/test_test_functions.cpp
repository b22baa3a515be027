#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "wedgebell/test_functions.hpp"

using namespace wedgebell;
using doctest::Approx;

TEST_CASE("support_contains") {
  const WedgeBumpParams right{WedgeSide::Right, 1.0, 2.5, 1.0};
  const WedgeBumpParams left{WedgeSide::Left, 1.0, 2.5, 1.0};
  CHECK(support_contains(right, {0.5, 1.0}));
  CHECK_FALSE(support_contains(right, {1.0, 1.0}));
  CHECK(support_contains(left, {0.0, -1.0}));
  CHECK_FALSE(support_contains(right, {0.0, 2.5}));
  CHECK_FALSE(support_contains(right, {0.0, -1.0}));
  CHECK_FALSE(support_contains(left, {0.0, 1.0}));
}

TEST_CASE("evaluate examples") {
  const WedgeBumpParams right{WedgeSide::Right, 1.0, 2.5, 1.0};
  const WedgeBumpParams left{WedgeSide::Left, 1.0, 2.5, 1.0};
  CHECK(evaluate(right, {1.0, 1.0}) == 0.0);
  CHECK(evaluate(left, {1.0, -1.0}) == 0.0);
  const double expected = std::exp(-1.0) * std::exp(-1.0 / 5.25) * std::exp(-1.0);
  CHECK(evaluate(right, {0.0, 1.0}) == Approx(expected).epsilon(1e-14));
  CHECK(evaluate(right, {0.0, 1.0}) == Approx(0.111863467614471).epsilon(1e-12));
  CHECK(evaluate(left, {0.0, -1.0}) == evaluate(right, {0.0, 1.0}));
}

TEST_CASE("bounding_box") {
  const Rectangle r = bounding_box({WedgeSide::Right, 1.0, 2.5, 1.0});
  CHECK(r.t_min == -2.5);
  CHECK(r.t_max == 2.5);
  CHECK(r.x_min == 0.0);
  CHECK(r.x_max == 2.5);
  const Rectangle l = bounding_box({WedgeSide::Left, 0.3, 3.0, 2.0});
  CHECK(l.t_min == -3.0);
  CHECK(l.t_max == 3.0);
  CHECK(l.x_min == -3.0);
  CHECK(l.x_max == 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((WedgeBumpParams{WedgeSide::Right, 0.0, 1.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((WedgeBumpParams{WedgeSide::Right, 1.0, -1.0, 1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((WedgeBumpParams{WedgeSide::Left, 1.0, 1.0, -3.0}.validate()));
}

namespace {
WedgeBumpParams random_bump(std::mt19937_64& rng, WedgeSide side) {
  std::uniform_real_distribution<double> decay(0.5, 5.0), cutoff(0.5, 5.0), amp(-3.0, 3.0);
  return {side, decay(rng), cutoff(rng), amp(rng)};
}
}  // namespace

TEST_CASE("property: compact support, box containment, linearity, mirror") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-6.0, 6.0);
  for (int i = 0; i < 300; ++i) {
    const WedgeBumpParams p = random_bump(rng, i % 2 ? WedgeSide::Right : WedgeSide::Left);
    const Rectangle box = bounding_box(p);
    WedgeBumpParams scaled = p;
    scaled.amplitude *= 2.5;
    WedgeBumpParams mirrored = p;
    mirrored.side = p.side == WedgeSide::Right ? WedgeSide::Left : WedgeSide::Right;
    for (int k = 0; k < 20; ++k) {
      const Event1p1 e{coord(rng), coord(rng)};
      const double v = evaluate(p, e);
      if (v != 0.0) {
        CHECK(support_contains(p, e));
        CHECK(box.contains(e));
      }
      if (!box.contains(e)) CHECK(v == 0.0);
      CHECK(evaluate(scaled, e) == Approx(2.5 * v).epsilon(1e-14));
      CHECK(evaluate(mirrored, {e.t, -e.x}) == v);
    }
  }
}

TEST_CASE("property: the bump vanishes near its support boundary") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> decay(0.5, 3.0), cutoff(1.0, 5.0);
  const double eps = 1e-3;
  for (int i = 0; i < 200; ++i) {
    const WedgeBumpParams p{WedgeSide::Right, decay(rng), cutoff(rng), 1.0};
    double peak = 0.0;
    for (int a = 1; a < 200; ++a) {
      for (int b = 0; b < 200; ++b) {
        const double x = p.cutoff * a / 200.0;
        const double t = x * (2.0 * b / 199.0 - 1.0);
        peak = std::max(peak, evaluate(p, {t, x}));
      }
    }
    // just inside x = |t| and x = cutoff
    for (double x : {0.3 * p.cutoff, 0.6 * p.cutoff, 0.9 * p.cutoff}) {
      CHECK(evaluate(p, {x - eps, x}) < 1e-4 * peak);
      CHECK(evaluate(p, {-(x - eps), x}) < 1e-4 * peak);
    }
    for (double t : {0.0, 0.3 * p.cutoff}) CHECK(evaluate(p, {t, p.cutoff - eps}) < 1e-4 * peak);
  }
}

TEST_CASE("property: right and left supports are spacelike separated") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const WedgeBumpParams r = random_bump(rng, WedgeSide::Right);
    const WedgeBumpParams l = random_bump(rng, WedgeSide::Left);
    for (int k = 0; k < 50; ++k) {
      const double xr = r.cutoff * u(rng), xl = -l.cutoff * u(rng);
      const Event1p1 a{xr * (2 * u(rng) - 1), xr};
      const Event1p1 b{-xl * (2 * u(rng) - 1), xl};
      if (!support_contains(r, a) || !support_contains(l, b)) continue;
      CHECK(interval(a - b) < 0.0);
    }
  }
}
