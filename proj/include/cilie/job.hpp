#pragma once

// Job files: JSON documents declaring a ring, a map or ideal, an optional
// point, module or DG module, and parameters. Validation collects every
// finding instead of stopping at the first.
//
//   {
//     "command": "tangent",
//     "variables": ["x", "y"],           // or [{"name": "x", "weight": 2}, ...]
//     "weights": [1, 1],                 // optional, default 1
//     "order": "grevlex",                // or "lex"
//     "map": ["x^2 + y^2"],
//     "point": [0, "1/2"],
//     "module": {"twists": [0], "relations": [["x"], ["y"]]},
//     "dgmodule": {"operators": 1, "degrees": [1, 0], "differential": [["0", "0"], ["chi1", "0"]]},
//     "parameters": {"degree": 8, "window": [5, 10], "n": 3, "max_monomials": 1000000, "max_width": 1000}
//   }
//
// Module relations are listed one relation per entry, each with one
// polynomial per generator. DG differentials are full matrices, row r and
// column s holding the coefficient of e_r in d(e_s).

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cilie/dgmodule.hpp"
#include "cilie/errors.hpp"
#include "cilie/ext.hpp"
#include "cilie/poly.hpp"
#include "cilie/resolution.hpp"

namespace cilie {

inline const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> names = {"tangent", "chevalley", "resolve", "ext",
                                                 "fgcheck", "tower",     "squarezero", "minimize"};
  return names;
}

/// Command-line values that take precedence over the job's parameters.
struct JobOverrides {
  std::optional<int> degree;
  std::optional<std::pair<int, int>> window;
  std::optional<int> n;
  std::optional<std::string> order;
  std::optional<long long> max_monomials;
  std::optional<long long> max_width;
};

struct JobParameters {
  int degree = 0;
  std::pair<int, int> window{5, 10};
  unsigned n = 3;
  std::size_t max_monomials = 1'000'000;
  std::size_t max_width = 1000;
};

struct Job {
  std::string command;
  RingPtr ring;
  std::vector<Poly> map;
  std::optional<Vector> point;
  GradedModulePresentation module;
  bool module_given = false;
  std::optional<DGModule> dg;
  JobParameters params;

  ResolutionLimits limits() const { return {{params.max_monomials}, params.max_width}; }
};

struct JobFinding {
  std::string field;
  std::string message;
};

struct JobValidation {
  std::optional<Job> job;
  std::vector<JobFinding> findings;
};

inline int default_degree(const std::string& command) {
  if (command == "chevalley") return 8;
  if (command == "resolve" || command == "ext" || command == "fgcheck" || command == "tower" ||
      command == "minimize")
    return 10;
  return 0;
}

namespace detail {

class JobReader {
 public:
  JobReader(const nlohmann::json& doc, std::string command, const JobOverrides& overrides)
      : doc_(doc), command_(std::move(command)), overrides_(overrides) {}

  JobValidation run() {
    Job job;
    if (!doc_.is_object()) {
      add("", "job file must be a JSON object");
      return finish(std::nullopt);
    }
    read_command(job);
    const bool needs_ring = job.command != "minimize";
    if (needs_ring || doc_.contains("variables")) read_ring(job);
    if (job.ring) {
      read_map(job);
      read_point(job);
      read_module(job);
    }
    read_dg(job);
    read_parameters(job);
    check_requirements(job);
    return finish(std::move(job));
  }

 private:
  void add(std::string field, std::string message) { findings_.push_back({std::move(field), std::move(message)}); }

  JobValidation finish(std::optional<Job> job) {
    JobValidation v;
    v.findings = std::move(findings_);
    if (v.findings.empty()) v.job = std::move(job);
    return v;
  }

  void read_command(Job& job) {
    std::string declared;
    if (doc_.contains("command")) {
      if (!doc_["command"].is_string())
        add("command", "must be a string");
      else
        declared = doc_["command"].get<std::string>();
    }
    job.command = command_.empty() ? declared : command_;
    if (!command_.empty() && !declared.empty() && declared != command_)
      add("command", "job declares '" + declared + "' but '" + command_ + "' was requested");
    const auto& names = job_commands();
    if (job.command.empty())
      add("command", "no command given");
    else if (std::find(names.begin(), names.end(), job.command) == names.end())
      add("command", "unknown command '" + job.command + "'");
  }

  void read_ring(Job& job) {
    if (!doc_.contains("variables") || !doc_["variables"].is_array()) {
      add("variables", "a list of variable names is required");
      return;
    }
    std::vector<std::string> names;
    std::vector<int> weights;
    std::set<std::string> seen;
    bool ok = true;
    for (const auto& v : doc_["variables"]) {
      std::string name;
      int weight = 1;
      if (v.is_string()) {
        name = v.get<std::string>();
      } else if (v.is_object() && v.contains("name") && v["name"].is_string()) {
        name = v["name"].get<std::string>();
        if (v.contains("weight")) {
          if (!v["weight"].is_number_integer() || v["weight"].get<long long>() < 1) {
            add("variables", "weight of '" + name + "' must be a positive integer");
            ok = false;
          } else {
            weight = v["weight"].get<int>();
          }
        }
      } else {
        add("variables", "each variable is a name or an object with \"name\" and optional \"weight\"");
        ok = false;
        continue;
      }
      const bool valid = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                         std::all_of(name.begin(), name.end(), [](char c) {
                           return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                         });
      if (!valid) {
        add("variables", "'" + name + "' is not a valid variable name");
        ok = false;
      } else if (!seen.insert(name).second) {
        add("variables", "variable '" + name + "' is declared twice");
        ok = false;
      }
      names.push_back(name);
      weights.push_back(weight);
    }
    if (doc_.contains("weights")) {
      const auto& w = doc_["weights"];
      if (!w.is_array() || w.size() != names.size()) {
        add("weights", "must list one positive integer per variable");
        ok = false;
      } else {
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (!w[i].is_number_integer() || w[i].get<long long>() < 1) {
            add("weights", "weight " + std::to_string(i + 1) + " must be a positive integer");
            ok = false;
          } else {
            weights[i] = w[i].get<int>();
          }
        }
      }
    }
    OrderKind kind = OrderKind::grevlex;
    std::optional<std::string> order = overrides_.order;
    if (!order && doc_.contains("order")) {
      if (doc_["order"].is_string())
        order = doc_["order"].get<std::string>();
      else
        add("order", "must be \"grevlex\" or \"lex\"");
    }
    if (order) {
      if (*order == "lex")
        kind = OrderKind::lex;
      else if (*order != "grevlex") {
        add("order", "unknown monomial order '" + *order + "'");
        ok = false;
      }
    }
    if (ok) job.ring = make_ring(names, weights, kind);
  }

  std::optional<Poly> poly(const nlohmann::json& v, const RingPtr& ring, const std::string& field) {
    if (!v.is_string() && !v.is_number_integer()) {
      add(field, "polynomials are given as strings");
      return std::nullopt;
    }
    const std::string text = v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
    try {
      return parse_poly(ring, text);
    } catch (const ParseError& e) {
      add(field, "'" + text + "': " + e.what());
      return std::nullopt;
    }
  }

  std::optional<Rational> rational(const nlohmann::json& v, const std::string& field) {
    try {
      if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
      if (v.is_string()) return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      add(field, e.what());
      return std::nullopt;
    }
    add(field, "rationals are integers or \"p/q\" strings");
    return std::nullopt;
  }

  void read_map(Job& job) {
    if (!doc_.contains("map")) return;
    if (!doc_["map"].is_array()) {
      add("map", "must be a list of polynomials");
      return;
    }
    std::size_t i = 0;
    for (const auto& v : doc_["map"]) {
      ++i;
      if (auto p = poly(v, job.ring, "map[" + std::to_string(i) + "]")) job.map.push_back(std::move(*p));
    }
  }

  void read_point(Job& job) {
    if (!doc_.contains("point")) return;
    const auto& pt = doc_["point"];
    if (!pt.is_array()) {
      add("point", "must be a list of rationals");
      return;
    }
    if (pt.size() != job.ring->nvars()) {
      add("point", "has " + std::to_string(pt.size()) + " coordinates for " + std::to_string(job.ring->nvars()) +
                       " variables");
      return;
    }
    Vector z;
    for (std::size_t i = 0; i < pt.size(); ++i)
      if (auto q = rational(pt[i], "point[" + std::to_string(i + 1) + "]")) z.push_back(*q);
    if (z.size() == pt.size()) job.point = std::move(z);
  }

  void read_module(Job& job) {
    job.module = residue_field(job.ring);
    if (!doc_.contains("module")) return;
    const auto& m = doc_["module"];
    if (!m.is_object() || !m.contains("twists") || !m["twists"].is_array()) {
      add("module", "needs \"twists\" (list of integers) and \"relations\"");
      return;
    }
    std::vector<int> twists;
    for (const auto& t : m["twists"]) {
      if (!t.is_number_integer()) {
        add("module.twists", "twists are integers");
        return;
      }
      twists.push_back(t.get<int>());
    }
    std::vector<std::vector<Poly>> cols;
    if (m.contains("relations")) {
      if (!m["relations"].is_array()) {
        add("module.relations", "must be a list of relations");
        return;
      }
      std::size_t k = 0;
      for (const auto& rel : m["relations"]) {
        ++k;
        const std::string field = "module.relations[" + std::to_string(k) + "]";
        if (!rel.is_array() || rel.size() != twists.size()) {
          add(field, "must list one polynomial per generator (" + std::to_string(twists.size()) + ")");
          continue;
        }
        std::vector<Poly> col;
        for (std::size_t g = 0; g < rel.size(); ++g)
          if (auto p = poly(rel[g], job.ring, field)) col.push_back(std::move(*p));
        if (col.size() == twists.size()) cols.push_back(std::move(col));
      }
    }
    job.module = {twists, PolyMatrix::from_columns(job.ring, twists.size(), cols)};
    job.module_given = true;
  }

  void read_dg(Job& job) {
    if (!doc_.contains("dgmodule")) return;
    const auto& m = doc_["dgmodule"];
    if (!m.is_object() || !m.contains("degrees") || !m["degrees"].is_array()) {
      add("dgmodule", "needs \"operators\", \"degrees\" and \"differential\"");
      return;
    }
    long long c = 1;
    if (m.contains("operators")) {
      if (!m["operators"].is_number_integer() || m["operators"].get<long long>() < 1 ||
          m["operators"].get<long long>() > 16) {
        add("dgmodule.operators", "must be an integer between 1 and 16");
        return;
      }
      c = m["operators"].get<long long>();
    }
    DGModule dg{operator_ring(static_cast<std::size_t>(c)), {}, {}};
    for (const auto& d : m["degrees"]) {
      if (!d.is_number_integer()) {
        add("dgmodule.degrees", "degrees are integers");
        return;
      }
      dg.degrees.push_back(d.get<int>());
    }
    const std::size_t n = dg.degrees.size();
    dg.differential = PolyMatrix(dg.ring, n, n);
    if (m.contains("differential")) {
      const auto& d = m["differential"];
      if (!d.is_array() || d.size() != n) {
        add("dgmodule.differential", "must be a " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
        return;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (!d[r].is_array() || d[r].size() != n) {
          add("dgmodule.differential", "row " + std::to_string(r + 1) + " must have " + std::to_string(n) + " entries");
          return;
        }
        for (std::size_t s = 0; s < n; ++s)
          if (auto p = poly(d[r][s], dg.ring, "dgmodule.differential")) dg.differential(r, s) = std::move(*p);
      }
    }
    job.dg = std::move(dg);
  }

  std::optional<long long> integer_param(const nlohmann::json& params, const char* key) {
    if (!params.contains(key)) return std::nullopt;
    if (!params[key].is_number_integer()) {
      add(std::string("parameters.") + key, "must be an integer");
      return std::nullopt;
    }
    return params[key].get<long long>();
  }

  void read_parameters(Job& job) {
    nlohmann::json params = nlohmann::json::object();
    if (doc_.contains("parameters")) {
      if (doc_["parameters"].is_object())
        params = doc_["parameters"];
      else
        add("parameters", "must be an object");
    }
    std::optional<long long> degree = overrides_.degree;
    if (!degree) degree = integer_param(params, "degree");
    job.params.degree = default_degree(job.command);
    if (degree) {
      if (*degree < 0 || *degree > 64)
        add("degree", "must be between 0 and 64");
      else
        job.params.degree = static_cast<int>(*degree);
    }

    std::optional<std::pair<long long, long long>> window;
    if (overrides_.window) window = *overrides_.window;
    else if (params.contains("window")) {
      const auto& w = params["window"];
      if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer())
        add("window", "must be a pair [D0, D]");
      else
        window = std::make_pair(w[0].get<long long>(), w[1].get<long long>());
    }
    if (window) {
      const auto [lo, hi] = *window;
      if (lo > hi)
        add("window", "D0 = " + std::to_string(lo) + " exceeds D = " + std::to_string(hi));
      else if (lo < 2 || hi < lo + 2 || hi > 64)
        add("window", "needs 2 <= D0, D0 + 2 <= D and D <= 64");
      else
        job.params.window = {static_cast<int>(lo), static_cast<int>(hi)};
    } else {
      job.params.window = default_window(degree ? job.params.degree : 10);
    }

    std::optional<long long> n = overrides_.n;
    if (!n) n = integer_param(params, "n");
    if (n) {
      if (*n < 1 || *n > 32)
        add("n", "must be between 1 and 32");
      else
        job.params.n = static_cast<unsigned>(*n);
    }
    std::optional<long long> mm = overrides_.max_monomials;
    if (!mm) mm = integer_param(params, "max_monomials");
    if (mm) {
      if (*mm < 1)
        add("max_monomials", "must be positive");
      else
        job.params.max_monomials = static_cast<std::size_t>(*mm);
    }
    std::optional<long long> mw = overrides_.max_width;
    if (!mw) mw = integer_param(params, "max_width");
    if (mw) {
      if (*mw < 1)
        add("max_width", "must be positive");
      else
        job.params.max_width = static_cast<std::size_t>(*mw);
    }
  }

  void check_requirements(const Job& job) {
    const std::string& c = job.command;
    if ((c == "tangent" || c == "chevalley") && !doc_.contains("point")) add("point", c + " needs a point");
    if ((c == "tower" || c == "squarezero") && job.ring && job.map.empty() && !doc_.contains("map"))
      add("map", c + " needs the generators f in \"map\"");
    if (c == "minimize" && !doc_.contains("dgmodule")) add("dgmodule", "minimize needs a \"dgmodule\"");
  }

  const nlohmann::json& doc_;
  std::string command_;
  JobOverrides overrides_;
  std::vector<JobFinding> findings_;
};

}  // namespace detail

/// Parses and validates a job. `command` overrides the job's own command
/// field unless empty.
inline JobValidation validate_job(const std::string& text, const std::string& command = {},
                                  const JobOverrides& overrides = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    JobValidation v;
    v.findings.push_back({"", std::string("not valid JSON: ") + e.what()});
    return v;
  }
  return detail::JobReader(doc, command, overrides).run();
}

}  // namespace cilie
