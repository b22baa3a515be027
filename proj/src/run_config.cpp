#include "wedgebell/run_config.hpp"

#include <algorithm>
#include <stdexcept>

namespace wedgebell {

using nlohmann::json;

json Violations::to_json() const {
  return json{{"error", "invalid configuration"}, {"violations", items_}};
}

namespace {

template <typename T>
bool read(const json& j, const char* key, T& out, const std::string& where, Violations& v) {
  if (!j.contains(key)) return false;
  try {
    out = j.at(key).get<T>();
    return true;
  } catch (const json::exception&) {
    v.add(where + "." + key + " has the wrong type");
    return false;
  }
}

}  // namespace

QuadConfig parse_quad_config(const json& j, const QuadConfig& defaults, Violations& v) {
  QuadConfig q = defaults;
  if (!j.contains("quad")) return q;
  const json& block = j.at("quad");
  if (!block.is_object()) {
    v.add("quad must be an object");
    return q;
  }
  std::string method;
  if (read(block, "method", method, "quad", v)) {
    try {
      q.method = parse_quad_method(method);
    } catch (const std::invalid_argument& e) {
      v.add(std::string("quad.method: ") + e.what());
    }
  }
  read(block, "max_evals", q.max_evals, "quad", v);
  read(block, "target_rel_error", q.target_rel_error, "quad", v);
  read(block, "seed", q.seed, "quad", v);
  v.require(q.max_evals >= 1000, "quad.max_evals must be >= 1000");
  v.require(q.target_rel_error > 0.0 && q.target_rel_error < 1.0,
            "quad.target_rel_error must lie in (0, 1)");
  return q;
}

WedgeBumpParams parse_bump(const json& j, WedgeSide side, const std::string& where, Violations& v) {
  WedgeBumpParams p;
  p.side = side;
  if (!j.is_object()) {
    v.add(where + " must be an object");
    return p;
  }
  for (const char* key : {"decay", "cutoff", "amplitude"}) {
    if (!j.contains(key)) v.add(where + "." + key + " is missing");
  }
  read(j, "decay", p.decay, where, v);
  read(j, "cutoff", p.cutoff, where, v);
  read(j, "amplitude", p.amplitude, where, v);
  v.require(p.decay > 0.0, where + ".decay must be > 0");
  v.require(p.cutoff > 0.0, where + ".cutoff must be > 0");
  return p;
}

WeylRunConfig parse_weyl_config(const json& j, const WeylRunConfig& defaults, Violations& v) {
  WeylRunConfig c = defaults;
  if (!j.is_object()) {
    v.add("configuration must be a JSON object");
    return c;
  }
  read(j, "mass", c.mass, "config", v);
  v.require(c.mass > 0.0, "mass must be > 0");
  std::string conv;
  if (read(j, "convention", conv, "config", v)) {
    try {
      c.convention = parse_convention(conv);
    } catch (const std::invalid_argument& e) {
      v.add(std::string("convention: ") + e.what());
    }
  }
  if (j.contains("test_functions")) {
    const json& tf = j.at("test_functions");
    const std::pair<const char*, std::pair<WedgeBumpParams*, WedgeSide>> slots[] = {
        {"f", {&c.test_functions.f, WedgeSide::Right}},
        {"f_prime", {&c.test_functions.f_prime, WedgeSide::Right}},
        {"g", {&c.test_functions.g, WedgeSide::Left}},
        {"g_prime", {&c.test_functions.g_prime, WedgeSide::Left}},
    };
    for (const auto& [key, slot] : slots) {
      if (!tf.contains(key)) {
        v.add(std::string("test_functions.") + key + " is missing");
        continue;
      }
      *slot.first = parse_bump(tf.at(key), slot.second, std::string("test_functions.") + key, v);
    }
  }
  c.quad = parse_quad_config(j, c.quad, v);
  return c;
}

json to_json(const QuadConfig& q) {
  return json{{"method", to_string(q.method)},
              {"max_evals", q.max_evals},
              {"target_rel_error", q.target_rel_error},
              {"seed", q.seed}};
}

json to_json(const IntegralResult& r) {
  return json{{"value", r.value},
              {"error_estimate", r.error_estimate},
              {"evals", r.evals},
              {"converged", r.converged}};
}

json to_json(const WedgeBumpParams& p) {
  return json{{"side", p.side == WedgeSide::Right ? "right" : "left"},
              {"decay", p.decay},
              {"cutoff", p.cutoff},
              {"amplitude", p.amplitude}};
}

json to_json(const WeylRunConfig& c) {
  return json{{"mass", c.mass},
              {"convention", to_string(c.convention)},
              {"test_functions",
               {{"f", to_json(c.test_functions.f)},
                {"f_prime", to_json(c.test_functions.f_prime)},
                {"g", to_json(c.test_functions.g)},
                {"g_prime", to_json(c.test_functions.g_prime)}}},
              {"quad", to_json(c.quad)}};
}

json to_json(const WeylChshResult& r) {
  json products = json::object();
  for (const auto& [key, ip] : r.inner_products) products[key] = to_json(ip);
  return json{{"value", r.chsh.value},
              {"error_estimate", r.chsh.error_estimate},
              {"evals", r.chsh.evals},
              {"converged", r.chsh.converged},
              {"inner_products", products}};
}

SearchSpace parse_search_space(const json& j, const SearchSpace& defaults, Violations& v) {
  SearchSpace s = defaults;
  if (!j.contains("space")) return s;
  const json& arr = j.at("space");
  if (!arr.is_array()) {
    v.add("space must be an array");
    return s;
  }
  for (const json& entry : arr) {
    std::string name;
    if (!entry.is_object() || !read(entry, "name", name, "space[]", v)) {
      v.add("space entries need a name");
      continue;
    }
    auto it = std::find_if(s.bounds.begin(), s.bounds.end(),
                           [&](const ParamBound& b) { return b.name == name; });
    if (it == s.bounds.end()) {
      v.add("space: unknown parameter '" + name + "'");
      continue;
    }
    read(entry, "lo", it->lo, "space." + name, v);
    read(entry, "hi", it->hi, "space." + name, v);
    read(entry, "log_scale", it->log_scale, "space." + name, v);
    v.require(it->lo <= it->hi, "space." + name + " requires lo <= hi");
    v.require(!it->log_scale || it->lo > 0.0, "space." + name + " is log-scale and needs lo > 0");
  }
  return s;
}

}  // namespace wedgebell
