#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wedgebell/bounded.hpp"
#include "wedgebell/quadrature.hpp"

namespace wedgebell {

enum class ObjectiveKind { ModularClosedForm, BoundedOps, WeylNumeric };

ObjectiveKind parse_objective_kind(std::string_view name);
std::string_view to_string(ObjectiveKind kind);

/// A CHSH correlator viewed as a function of a flat parameter vector.
///
/// ModularClosedForm and BoundedOps take (eta, eta_prime, lambda).
/// WeylNumeric takes the thirteen table parameters in table order:
/// (a, eta, b, sigma, a', eta', b', sigma', alpha, alpha', beta, beta', m),
/// where alpha.. are wedge cutoffs, not Bell angles.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::ModularClosedForm;
  KernelConvention convention = KernelConvention::Paper;
  /// Budget for screening evaluations of WeylNumeric.
  QuadConfig quad{QuadMethod::QuasiMonteCarlo, 1u << 14, 5e-2, 0};
  /// Budget for re-scoring the kept WeylNumeric candidates.
  QuadConfig rescore_quad{QuadMethod::QuasiMonteCarlo, 1u << 20, 1e-2, 0};
  BoundedQuadConfig bounded{1e-8, 12};

  std::size_t dimension() const;
  std::vector<std::string> parameter_names() const;

  /// nullopt when the evaluation fails (invalid point, non-finite value or
  /// unconverged quadrature).
  std::optional<double> evaluate(std::span<const double> params, bool rescore = false) const;
};

BellTestFunctions bell_test_functions_from_table_order(std::span<const double> params);

struct ParamBound {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  /// Sample uniformly in log(x) instead of x.
  bool log_scale = false;
};

struct SearchSpace {
  std::vector<ParamBound> bounds;

  /// Requires finite lo <= hi (lo == hi pins a parameter) and lo > 0 on log axes.
  void validate(std::size_t expected_dimension) const;
};

SearchSpace default_search_space(ObjectiveKind kind);

struct SearchConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t keep_top = 10;
  bool refine = false;
  std::size_t refine_iters = 100;

  void validate() const;
};

struct SearchHit {
  std::vector<double> params;
  double value = 0.0;
  std::size_t sample_index = 0;
};

struct SearchResult {
  /// Sorted by value, non-increasing.
  std::vector<SearchHit> top;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
};

/// Uniform (or log-uniform) random sampling, evaluated in parallel; ranking is
/// done after all samples are in, so output is independent of thread count.
SearchResult random_search(const Objective& obj, const SearchSpace& space, const SearchConfig& cfg);

/// Coordinate-wise pattern search from start, staying inside space. Never
/// returns a value below the start value.
SearchHit local_refine(const SearchHit& start, const Objective& obj, const SearchSpace& space,
                       const SearchConfig& cfg);

/// A row of the published parameter table.
struct TableRow {
  BellTestFunctions test_functions;
  double mass;
  double reported_chsh;
};

inline constexpr int kTableRows = 4;

/// Rows are numbered from 1. Throws std::out_of_range otherwise.
TableRow table_row(int row);

WeylChshResult reproduce_table(int row, KernelConvention conv, const QuadConfig& cfg);

}  // namespace wedgebell
