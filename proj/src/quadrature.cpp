#include "wedgebell/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wedgebell/sobol.hpp"

namespace wedgebell {

QuadMethod parse_quad_method(std::string_view name) {
  if (name == "qmc") return QuadMethod::QuasiMonteCarlo;
  if (name == "adaptive") return QuadMethod::AdaptiveSubdivision;
  throw std::invalid_argument("unknown quadrature method '" + std::string(name) +
                              "' (expected qmc|adaptive)");
}

std::string_view to_string(QuadMethod method) {
  return method == QuadMethod::QuasiMonteCarlo ? "qmc" : "adaptive";
}

void QuadConfig::validate() const {
  if (max_evals < 1000) throw std::invalid_argument("quad.max_evals must be >= 1000");
  if (!(target_rel_error > 0.0 && target_rel_error < 1.0)) {
    throw std::invalid_argument("quad.target_rel_error must lie in (0, 1)");
  }
}

// ---------------------------------------------------------------------------
// Quasi Monte Carlo

namespace {

struct QmcLayout {
  std::uint64_t per_replica;
  std::uint64_t blocks;  // per replica
};

QmcLayout qmc_layout(const QuadConfig& cfg) {
  cfg.validate();
  const std::uint64_t per = cfg.max_evals / kQmcReplicas;
  return {per, (per + kQmcBlock - 1) / kQmcBlock};
}

std::vector<SobolSequence> qmc_replicas(int dims, std::uint64_t seed) {
  std::vector<SobolSequence> seqs;
  seqs.reserve(kQmcReplicas);
  for (int r = 0; r < kQmcReplicas; ++r) seqs.emplace_back(dims, seed, static_cast<std::uint64_t>(r));
  return seqs;
}

double block_sum(const UnitIntegrand& f, const SobolSequence& seq, std::uint64_t begin,
                 std::uint64_t end) {
  std::array<double, SobolSequence::kMaxDims> u{};
  const std::span<const double> point(u.data(), static_cast<std::size_t>(seq.dims()));
  auto cursor = seq.cursor(begin);
  double sum = 0.0;
  for (std::uint64_t i = begin; i < end; ++i) {
    cursor.next(u.data());
    sum += f(point);
  }
  return sum;
}

// Folds block sums (replica-major) in index order.
IntegralResult qmc_finish(const std::vector<double>& block_sums, const QmcLayout& layout,
                          const QuadConfig& cfg) {
  std::array<double, kQmcReplicas> means{};
  for (int r = 0; r < kQmcReplicas; ++r) {
    double s = 0.0;
    for (std::uint64_t b = 0; b < layout.blocks; ++b) s += block_sums[r * layout.blocks + b];
    means[r] = s / static_cast<double>(layout.per_replica);
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= kQmcReplicas;
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var /= (kQmcReplicas - 1);

  IntegralResult out;
  out.value = mean;
  out.error_estimate = std::sqrt(var / kQmcReplicas);
  out.evals = layout.per_replica * kQmcReplicas;
  out.converged = out.error_estimate <= cfg.target_rel_error * std::abs(out.value);
  return out;
}

}  // namespace

IntegralResult integrate_qmc(const UnitIntegrand& f, int dims, const QuadConfig& cfg) {
  const QmcLayout layout = qmc_layout(cfg);
  const auto seqs = qmc_replicas(dims, cfg.seed);
  const auto total = static_cast<std::int64_t>(layout.blocks * kQmcReplicas);
  std::vector<double> sums(static_cast<std::size_t>(total), 0.0);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t idx = 0; idx < total; ++idx) {
    const auto r = static_cast<std::uint64_t>(idx) / layout.blocks;
    const auto b = static_cast<std::uint64_t>(idx) % layout.blocks;
    const std::uint64_t begin = b * kQmcBlock;
    const std::uint64_t end = std::min(begin + kQmcBlock, layout.per_replica);
    sums[static_cast<std::size_t>(idx)] = block_sum(f, seqs[r], begin, end);
  }
  return qmc_finish(sums, layout, cfg);
}

IntegralResult integrate_qmc_serial(const UnitIntegrand& f, int dims, const QuadConfig& cfg) {
  const QmcLayout layout = qmc_layout(cfg);
  const auto seqs = qmc_replicas(dims, cfg.seed);
  std::vector<double> sums;
  sums.reserve(layout.blocks * kQmcReplicas);

  std::array<double, SobolSequence::kMaxDims> u{};
  const std::span<const double> point(u.data(), static_cast<std::size_t>(dims));
  for (const auto& seq : seqs) {
    auto cursor = seq.cursor(0);
    double block = 0.0;
    for (std::uint64_t i = 0; i < layout.per_replica; ++i) {
      cursor.next(u.data());
      block += f(point);
      if ((i + 1) % kQmcBlock == 0 || i + 1 == layout.per_replica) {
        sums.push_back(block);
        block = 0.0;
      }
    }
  }
  return qmc_finish(sums, layout, cfg);
}

// ---------------------------------------------------------------------------
// Adaptive subdivision

namespace {

constexpr int kMaxAdaptiveDims = 4;
constexpr std::array<double, 3> kGl3Nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr std::array<double, 3> kGl3Weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
constexpr std::array<double, 2> kGl2Nodes{-0.5773502691896258, 0.5773502691896258};

struct Cell {
  std::array<double, kMaxAdaptiveDims> lo{}, hi{};
  double value = 0.0;
  double error = 0.0;
  int split_axis = 0;
  std::uint64_t id = 0;
};

int ipow(int base, int exp) {
  int r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Fills value, error and split axis; returns the number of integrand calls.
std::uint64_t evaluate_cell(const UnitIntegrand& f, int dims, Cell& cell) {
  std::array<double, kMaxAdaptiveDims> mid{}, half{};
  double volume = 1.0;
  for (int d = 0; d < dims; ++d) {
    mid[d] = 0.5 * (cell.lo[d] + cell.hi[d]);
    half[d] = 0.5 * (cell.hi[d] - cell.lo[d]);
    volume *= cell.hi[d] - cell.lo[d];
  }
  std::array<double, kMaxAdaptiveDims> x{};
  const std::span<const double> point(x.data(), static_cast<std::size_t>(dims));

  const int n3 = ipow(3, dims);
  std::vector<double> values(static_cast<std::size_t>(n3));
  double high = 0.0;
  for (int k = 0; k < n3; ++k) {
    double w = 1.0;
    int rem = k;
    for (int d = 0; d < dims; ++d) {
      const int j = rem % 3;
      rem /= 3;
      x[d] = mid[d] + half[d] * kGl3Nodes[j];
      w *= kGl3Weights[j];
    }
    values[k] = f(point);
    high += w * values[k];
  }
  high *= volume / std::pow(2.0, dims);

  const int n2 = 1 << dims;
  double low = 0.0;
  for (int k = 0; k < n2; ++k) {
    for (int d = 0; d < dims; ++d) x[d] = mid[d] + half[d] * kGl2Nodes[(k >> d) & 1];
    low += f(point);
  }
  low *= volume / static_cast<double>(n2);

  // Second difference along each axis, weighted by the remaining axes.
  std::array<double, kMaxAdaptiveDims> variation{};
  for (int k = 0; k < n3; ++k) {
    int rem = k;
    std::array<int, kMaxAdaptiveDims> idx{};
    for (int d = 0; d < dims; ++d) {
      idx[d] = rem % 3;
      rem /= 3;
    }
    for (int a = 0; a < dims; ++a) {
      if (idx[a] != 1) continue;
      const int stride = ipow(3, a);
      double w = 1.0;
      for (int d = 0; d < dims; ++d) {
        if (d != a) w *= kGl3Weights[idx[d]];
      }
      variation[a] += w * std::abs(values[k - stride] + values[k + stride] - 2.0 * values[k]);
    }
  }
  cell.split_axis = static_cast<int>(
      std::max_element(variation.begin(), variation.begin() + dims) - variation.begin());
  cell.value = high;
  cell.error = std::abs(high - low);
  return static_cast<std::uint64_t>(n3 + n2);
}

}  // namespace

IntegralResult integrate_adaptive(const UnitIntegrand& f, int dims, const QuadConfig& cfg) {
  cfg.validate();
  if (dims < 1 || dims > kMaxAdaptiveDims) {
    throw std::invalid_argument("adaptive quadrature supports 1..4 dimensions");
  }
  const std::uint64_t cost = static_cast<std::uint64_t>(ipow(3, dims) + (1 << dims));
  auto worse = [](const Cell& a, const Cell& b) {
    return a.error != b.error ? a.error < b.error : a.id > b.id;
  };

  std::vector<Cell> heap;
  std::uint64_t next_id = 0;
  Cell root;
  for (int d = 0; d < dims; ++d) root.hi[d] = 1.0;
  root.id = next_id++;
  std::uint64_t evals = evaluate_cell(f, dims, root);
  double total = root.value;
  double total_error = root.error;
  heap.push_back(root);

  while (total_error > cfg.target_rel_error * std::abs(total) && evals + 2 * cost <= cfg.max_evals) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Cell parent = heap.back();
    heap.pop_back();
    total -= parent.value;
    total_error -= parent.error;

    const int a = parent.split_axis;
    const double cut = 0.5 * (parent.lo[a] + parent.hi[a]);
    Cell left = parent, right = parent;
    left.hi[a] = cut;
    right.lo[a] = cut;
    for (Cell* c : {&left, &right}) {
      c->id = next_id++;
      evals += evaluate_cell(f, dims, *c);
      total += c->value;
      total_error += c->error;
      heap.push_back(*c);
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  }

  // Re-sum in creation order to shed the running-sum drift.
  std::sort(heap.begin(), heap.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  IntegralResult out;
  for (const Cell& c : heap) {
    out.value += c.value;
    out.error_estimate += c.error;
  }
  out.evals = evals;
  out.converged = out.error_estimate <= cfg.target_rel_error * std::abs(out.value);
  return out;
}

IntegralResult integrate(const UnitIntegrand& f, int dims, const QuadConfig& cfg) {
  return cfg.method == QuadMethod::QuasiMonteCarlo ? integrate_qmc(f, dims, cfg)
                                                   : integrate_adaptive(f, dims, cfg);
}

// ---------------------------------------------------------------------------
// Smeared pairings

IntegralResult kernel_pairing(const SmearingRegion& f, const SmearingRegion& g,
                              const std::function<double(Event1p1)>& kernel,
                              const QuadConfig& cfg) {
  const Rectangle a = f.box;
  const Rectangle b = g.box;
  const double volume = (a.t_max - a.t_min) * (a.x_max - a.x_min) * (b.t_max - b.t_min) *
                        (b.x_max - b.x_min);
  UnitIntegrand integrand = [&](std::span<const double> u) {
    const Event1p1 x{a.t_min + u[0] * (a.t_max - a.t_min), a.x_min + u[1] * (a.x_max - a.x_min)};
    const double fx = f.fn(x);
    if (fx == 0.0) return 0.0;
    const Event1p1 y{b.t_min + u[2] * (b.t_max - b.t_min), b.x_min + u[3] * (b.x_max - b.x_min)};
    const double gy = g.fn(y);
    if (gy == 0.0) return 0.0;
    return volume * fx * gy * kernel(x - y);
  };
  return integrate(integrand, 4, cfg);
}

namespace {

// Maps (u, v) in the unit square onto the bump support {|t| < depth < extent}
// via depth = u * extent, t = (2v - 1) * depth.
struct WedgeChart {
  WedgeBumpParams bump;
  double extent;

  explicit WedgeChart(const WedgeBumpParams& p)
      : bump(p), extent(std::min(p.cutoff, kGaussianRadius)) {}

  // Returns f(event) times the Jacobian; writes the event.
  double weight(double u, double v, Event1p1& e) const {
    const double depth = u * extent;
    e.t = (2.0 * v - 1.0) * depth;
    e.x = bump.side == WedgeSide::Right ? depth : -depth;
    const double f = evaluate(bump, e);
    return f == 0.0 ? 0.0 : f * extent * 2.0 * depth;
  }
};

template <typename Kernel>
IntegralResult wedge_pairing(const WedgeBumpParams& f, const WedgeBumpParams& g, Kernel kernel,
                             const QuadConfig& cfg) {
  f.validate();
  g.validate();
  const WedgeChart cf(f), cg(g);
  UnitIntegrand integrand = [&](std::span<const double> u) {
    Event1p1 x, y;
    const double wf = cf.weight(u[0], u[1], x);
    if (wf == 0.0) return 0.0;
    const double wg = cg.weight(u[2], u[3], y);
    if (wg == 0.0) return 0.0;
    return wf * wg * kernel(x - y);
  };
  return integrate(integrand, 4, cfg);
}

}  // namespace

IntegralResult hadamard_inner(const WedgeBumpParams& f, const WedgeBumpParams& g, Mass m,
                              KernelConvention conv, const QuadConfig& cfg) {
  return wedge_pairing(
      f, g, [m, conv](Event1p1 d) { return hadamard_or_zero(d, m, conv); }, cfg);
}

IntegralResult pj_inner(const WedgeBumpParams& f, const WedgeBumpParams& g, Mass m,
                        const QuadConfig& cfg) {
  return wedge_pairing(f, g, [m](Event1p1 d) { return pauli_jordan(d, m); }, cfg);
}

// ---------------------------------------------------------------------------
// Numerical Weyl CHSH

namespace {

struct ChshTerm {
  const char* alice_norm;
  const char* cross;
  const char* bob_norm;
  double sign;
};

// <C> = sum_i sign_i exp(-1/2 [H(a,a) + 2 H(a,b) + H(b,b)])
constexpr std::array<ChshTerm, 4> kChshTerms{{
    {"ff", "fg", "gg", +1.0},
    {"fpfp", "fpg", "gg", +1.0},
    {"ff", "fgp", "gpgp", +1.0},
    {"fpfp", "fpgp", "gpgp", -1.0},
}};

}  // namespace

double chsh_from_inner_products(const std::map<std::string, double>& h) {
  double c = 0.0;
  for (const auto& term : kChshTerms) {
    const double norm = h.at(term.alice_norm) + 2.0 * h.at(term.cross) + h.at(term.bob_norm);
    c += term.sign * std::exp(-0.5 * norm);
  }
  return c;
}

WeylChshResult chsh_weyl_numeric(const BellTestFunctions& tf, Mass m, KernelConvention conv,
                                 const QuadConfig& cfg) {
  if (tf.f.side != WedgeSide::Right || tf.f_prime.side != WedgeSide::Right) {
    throw std::invalid_argument("Alice's test functions f, f' must lie in the right wedge");
  }
  if (tf.g.side != WedgeSide::Left || tf.g_prime.side != WedgeSide::Left) {
    throw std::invalid_argument("Bob's test functions g, g' must lie in the left wedge");
  }
  cfg.validate();

  const std::array<std::pair<const char*, std::pair<const WedgeBumpParams*, const WedgeBumpParams*>>, 8>
      pairs{{
          {"ff", {&tf.f, &tf.f}},
          {"fpfp", {&tf.f_prime, &tf.f_prime}},
          {"gg", {&tf.g, &tf.g}},
          {"gpgp", {&tf.g_prime, &tf.g_prime}},
          {"fg", {&tf.f, &tf.g}},
          {"fpg", {&tf.f_prime, &tf.g}},
          {"fgp", {&tf.f, &tf.g_prime}},
          {"fpgp", {&tf.f_prime, &tf.g_prime}},
      }};

  WeylChshResult out;
  std::map<std::string, double> values;
  for (const auto& [key, pq] : pairs) {
    const IntegralResult r = hadamard_inner(*pq.first, *pq.second, m, conv, cfg);
    out.inner_products[key] = r;
    values[key] = r.value;
    out.chsh.evals += r.evals;
  }
  out.chsh.value = chsh_from_inner_products(values);

  std::map<std::string, double> gradient;
  for (const auto& term : kChshTerms) {
    const double norm =
        values[term.alice_norm] + 2.0 * values[term.cross] + values[term.bob_norm];
    const double e = term.sign * std::exp(-0.5 * norm);
    gradient[term.alice_norm] += -0.5 * e;
    gradient[term.bob_norm] += -0.5 * e;
    gradient[term.cross] += -e;
  }
  double var = 0.0;
  for (const auto& [key, r] : out.inner_products) {
    const double d = gradient[key] * r.error_estimate;
    var += d * d;
  }
  out.chsh.error_estimate = std::sqrt(var);
  out.chsh.converged = out.chsh.error_estimate <= cfg.target_rel_error * std::abs(out.chsh.value);
  return out;
}

}  // namespace wedgebell
