#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "wedgebell/quadrature.hpp"
#include "wedgebell/search.hpp"

namespace wedgebell {

/// Collects every violated invariant of a run configuration so they can be
/// reported together before any computation starts.
class Violations {
public:
  void require(bool ok, std::string message) {
    if (!ok) items_.push_back(std::move(message));
  }
  void add(std::string message) { items_.push_back(std::move(message)); }
  bool empty() const { return items_.empty(); }
  const std::vector<std::string>& items() const { return items_; }
  nlohmann::json to_json() const;

private:
  std::vector<std::string> items_;
};

/// Reads an optional "quad" block on top of the given defaults.
QuadConfig parse_quad_config(const nlohmann::json& j, const QuadConfig& defaults, Violations& v);

/// Reads {"decay", "cutoff", "amplitude"} for a bump on the given side.
WedgeBumpParams parse_bump(const nlohmann::json& j, WedgeSide side, const std::string& where,
                           Violations& v);

/// Everything the numerical Weyl correlator needs.
struct WeylRunConfig {
  BellTestFunctions test_functions;
  double mass = 0.0;
  KernelConvention convention = KernelConvention::Paper;
  QuadConfig quad;
};

/// Expected layout:
///   { "mass": m, "convention": "paper"|"standard",
///     "test_functions": { "f": {...}, "f_prime": {...}, "g": {...}, "g_prime": {...} },
///     "quad": { "method": "qmc"|"adaptive", "max_evals": N, "target_rel_error": r, "seed": s } }
WeylRunConfig parse_weyl_config(const nlohmann::json& j, const WeylRunConfig& defaults,
                                Violations& v);

nlohmann::json to_json(const QuadConfig& q);
nlohmann::json to_json(const IntegralResult& r);
nlohmann::json to_json(const WedgeBumpParams& p);
nlohmann::json to_json(const WeylRunConfig& c);
nlohmann::json to_json(const WeylChshResult& r);

/// Reads an optional "space" array of {"name", "lo", "hi", "log_scale"}
/// overriding entries of the given space by name.
SearchSpace parse_search_space(const nlohmann::json& j, const SearchSpace& defaults, Violations& v);

}  // namespace wedgebell
