#include "wedgebell/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wedgebell/modular.hpp"

namespace wedgebell {

ObjectiveKind parse_objective_kind(std::string_view name) {
  if (name == "modular") return ObjectiveKind::ModularClosedForm;
  if (name == "bounded") return ObjectiveKind::BoundedOps;
  if (name == "weyl") return ObjectiveKind::WeylNumeric;
  throw std::invalid_argument("unknown objective '" + std::string(name) +
                              "' (expected modular|bounded|weyl)");
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::ModularClosedForm: return "modular";
    case ObjectiveKind::BoundedOps: return "bounded";
    case ObjectiveKind::WeylNumeric: return "weyl";
  }
  return "?";
}

namespace {
const std::vector<std::string> kSpectralNames{"eta", "eta_prime", "lambda"};
const std::vector<std::string> kTableNames{"a",     "eta",    "b",     "sigma", "a_prime",
                                           "eta_prime", "b_prime", "sigma_prime", "alpha",
                                           "alpha_prime", "beta", "beta_prime", "mass"};
}  // namespace

std::size_t Objective::dimension() const { return parameter_names().size(); }

std::vector<std::string> Objective::parameter_names() const {
  return kind == ObjectiveKind::WeylNumeric ? kTableNames : kSpectralNames;
}

BellTestFunctions bell_test_functions_from_table_order(std::span<const double> p) {
  if (p.size() < 12) throw std::invalid_argument("need twelve test-function parameters");
  BellTestFunctions tf;
  tf.f = {WedgeSide::Right, p[0], p[8], p[1]};
  tf.g = {WedgeSide::Left, p[2], p[10], p[3]};
  tf.f_prime = {WedgeSide::Right, p[4], p[9], p[5]};
  tf.g_prime = {WedgeSide::Left, p[6], p[11], p[7]};
  return tf;
}

std::optional<double> Objective::evaluate(std::span<const double> params, bool rescore) const {
  if (params.size() != dimension()) throw std::invalid_argument("parameter count mismatch");
  try {
    double value = 0.0;
    switch (kind) {
      case ObjectiveKind::ModularClosedForm:
        value = weyl_chsh_closed_form({params[0], params[1], params[2]});
        break;
      case ObjectiveKind::BoundedOps:
        value = chsh_bounded({params[0], params[1], params[2]}, bounded);
        break;
      case ObjectiveKind::WeylNumeric: {
        const auto tf = bell_test_functions_from_table_order(params);
        const auto r = chsh_weyl_numeric(tf, Mass(params[12]), convention,
                                         rescore ? rescore_quad : quad);
        if (!r.chsh.converged) return std::nullopt;
        value = r.chsh.value;
        break;
      }
    }
    if (!std::isfinite(value)) return std::nullopt;
    return value;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

void SearchSpace::validate(std::size_t expected_dimension) const {
  if (bounds.size() != expected_dimension) {
    throw std::invalid_argument("search space has " + std::to_string(bounds.size()) +
                                " parameters, objective needs " +
                                std::to_string(expected_dimension));
  }
  for (const auto& b : bounds) {
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || b.lo > b.hi) {
      throw std::invalid_argument("bound for '" + b.name + "' must satisfy finite lo <= hi");
    }
    if (b.log_scale && !(b.lo > 0.0)) {
      throw std::invalid_argument("log-scale bound for '" + b.name + "' must be positive");
    }
  }
}

SearchSpace default_search_space(ObjectiveKind kind) {
  if (kind != ObjectiveKind::WeylNumeric) {
    return {{{"eta", 0.0, 2.0, false}, {"eta_prime", 0.0, 2.0, false}, {"lambda", 0.0, 1.0, false}}};
  }
  SearchSpace s;
  for (const auto& name : kTableNames) {
    ParamBound b{name, 0.0, 0.0, false};
    if (name == "a" || name == "b" || name == "a_prime" || name == "b_prime") {
      b.lo = 0.01, b.hi = 5.0;
    } else if (name == "mass") {
      b.lo = 1e-4, b.hi = 0.05, b.log_scale = true;
    } else if (name.starts_with("alpha") || name.starts_with("beta")) {
      b.lo = 1.0, b.hi = 600.0, b.log_scale = true;
    } else {
      b.lo = 0.01, b.hi = 7.0;
    }
    s.bounds.push_back(b);
  }
  return s;
}

void SearchConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (keep_top < 1 || keep_top > samples) {
    throw std::invalid_argument("keep_top must lie in [1, samples]");
  }
  if (refine && refine_iters < 1) throw std::invalid_argument("refine_iters must be >= 1");
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; mt19937_64 output is fully
// specified, so samples are identical on every platform.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

double draw(const ParamBound& b, std::mt19937_64& rng) {
  const double u = unit_draw(rng);
  if (b.lo == b.hi) return b.lo;
  if (b.log_scale) return std::exp(std::log(b.lo) + u * (std::log(b.hi) - std::log(b.lo)));
  return b.lo + u * (b.hi - b.lo);
}

bool ranks_before(const SearchHit& a, const SearchHit& b) {
  return a.value != b.value ? a.value > b.value : a.sample_index < b.sample_index;
}

}  // namespace

SearchResult random_search(const Objective& obj, const SearchSpace& space, const SearchConfig& cfg) {
  cfg.validate();
  space.validate(obj.dimension());

  const std::size_t dim = obj.dimension();
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> points(cfg.samples * dim);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    for (std::size_t d = 0; d < dim; ++d) points[i * dim + d] = draw(space.bounds[d], rng);
  }

  std::vector<std::optional<double>> values(cfg.samples);
  const auto n = static_cast<std::int64_t>(cfg.samples);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    values[k] = obj.evaluate(std::span<const double>(points.data() + k * dim, dim));
  }

  SearchResult out;
  out.evaluated = cfg.samples;
  std::vector<SearchHit> hits;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    if (!values[i]) {
      ++out.failed;
      continue;
    }
    hits.push_back({std::vector<double>(points.begin() + static_cast<std::ptrdiff_t>(i * dim),
                                        points.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim)),
                    *values[i], i});
  }
  const std::size_t keep = std::min(cfg.keep_top, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep), hits.end(),
                    ranks_before);
  hits.resize(keep);

  if (obj.kind == ObjectiveKind::WeylNumeric) {
    // Screening ran at a reduced budget; re-score the survivors.
    std::vector<SearchHit> rescored;
    for (auto& h : hits) {
      if (auto v = obj.evaluate(h.params, true)) {
        h.value = *v;
        rescored.push_back(h);
      } else {
        ++out.failed;
      }
    }
    std::sort(rescored.begin(), rescored.end(), ranks_before);
    hits = std::move(rescored);
  }

  if (cfg.refine) {
    for (auto& h : hits) h = local_refine(h, obj, space, cfg);
    std::sort(hits.begin(), hits.end(), ranks_before);
  }
  out.top = std::move(hits);
  return out;
}

SearchHit local_refine(const SearchHit& start, const Objective& obj, const SearchSpace& space,
                       const SearchConfig& cfg) {
  space.validate(obj.dimension());
  const std::size_t dim = obj.dimension();
  if (start.params.size() != dim) throw std::invalid_argument("start point has wrong dimension");

  SearchHit best = start;
  const bool rescore = obj.kind == ObjectiveKind::WeylNumeric;
  std::vector<double> step(dim), min_step(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double range = space.bounds[d].hi - space.bounds[d].lo;
    step[d] = 0.1 * range;
    min_step[d] = 1e-6 * range;
  }

  for (std::size_t sweep = 0; sweep < cfg.refine_iters; ++sweep) {
    bool any_active = false;
    for (std::size_t d = 0; d < dim; ++d) any_active = any_active || step[d] >= min_step[d];
    if (!any_active) break;

    bool improved = false;
    for (std::size_t d = 0; d < dim; ++d) {
      if (step[d] < min_step[d] || step[d] == 0.0) continue;
      for (const double dir : {+1.0, -1.0}) {
        std::vector<double> probe = best.params;
        probe[d] = std::clamp(probe[d] + dir * step[d], space.bounds[d].lo, space.bounds[d].hi);
        if (probe[d] == best.params[d]) continue;
        const auto v = obj.evaluate(probe, rescore);
        if (v && *v > best.value) {
          best.params = std::move(probe);
          best.value = *v;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      for (auto& s : step) s *= 0.5;
    }
  }
  return best;
}

namespace {

// (a, eta, b, sigma, a', eta', b', sigma', alpha, alpha', beta, beta', m, <C>)
constexpr std::array<std::array<double, 14>, kTableRows> kTable{{
    {0.553252, 0.501461, 0.0255094, 0.0277324, 4.88226, 2.13737, 1.13043, 6.34535, 3.35234,
     29.6709, 2.43472, 39.5616, 0.0105, 2.036467},
    {0.500578, 0.298369, 0.653954, 0.0417114, 3.61629, 0.0116148, 2.41375, 13.1309, 4.05258,
     8.10541, 1.45682, 19.0785, 0.0251, 2.034017},
    {0.61566, 0.94915, 0.693725, 0.0946157, 3.80309, 1.58214, 1.29682, 3.46438, 2.48678, 148.817,
     3.18138, 55.3358, 0.00068, 2.044862},
    {0.876652, 0.47235, 0.0344563, 0.0887357, 2.92081, 0.21993, 1.30691, 4.7266, 6.27319, 563.98,
     1.46396, 201.305, 0.00027, 2.044925},
}};

}  // namespace

TableRow table_row(int row) {
  if (row < 1 || row > kTableRows) {
    throw std::out_of_range("table row must lie in 1.." + std::to_string(kTableRows));
  }
  const auto& r = kTable[static_cast<std::size_t>(row - 1)];
  return {bell_test_functions_from_table_order(std::span<const double>(r.data(), 12)), r[12], r[13]};
}

WeylChshResult reproduce_table(int row, KernelConvention conv, const QuadConfig& cfg) {
  const TableRow r = table_row(row);
  return chsh_weyl_numeric(r.test_functions, Mass(r.mass), conv, cfg);
}

}  // namespace wedgebell
