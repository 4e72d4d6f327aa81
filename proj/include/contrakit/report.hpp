#pragma once

#include "fpmod.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace contrakit {

using json = nlohmann::ordered_json;

/// Integers go out as JSON numbers when they fit, otherwise as decimal strings.
inline json jint(const Int &a) {
  if (a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(a);
  return a.str();
}

inline json jvec(const IntVec &v) {
  json a = json::array();
  for (auto &x : v) a.push_back(jint(x));
  return a;
}

inline json jmatrix(const IntMatrix &m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(jvec(m.row(i)));
  return a;
}

inline json module_json(const FPModule &m) {
  return json{{"invariants", {{"rank", m.free_rank()}, {"torsion", jvec(m.torsion())}}}};
}

struct Check {
  std::string name;
  bool pass = true;
  json witness;
};

/// Named pass/fail checks; every failing check should carry a witness.
struct Report {
  std::string experiment;
  json params = json::object();
  std::vector<Check> checks;
  json result = json::object();

  Check &add(std::string name, bool pass, json witness = json::object()) {
    checks.push_back({std::move(name), pass, std::move(witness)});
    return checks.back();
  }
  bool all_pass() const {
    for (auto &c : checks)
      if (!c.pass) return false;
    return true;
  }
  json to_json() const {
    json j;
    j["experiment"] = experiment;
    for (auto &[k, v] : params.items()) j[k] = v;
    json cs = json::array();
    for (auto &c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    j["checks"] = cs;
    if (!result.empty()) j["result"] = result;
    j["pass"] = all_pass();
    return j;
  }
};

} // namespace contrakit
