#pragma once

// Runs a validated job and assembles its report: command echo, input
// digest, result payload and cross-check statuses. Reports are ordered JSON
// so that both renderings are byte-stable.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cilie/chevalley.hpp"
#include "cilie/dgmodule.hpp"
#include "cilie/ext.hpp"
#include "cilie/job.hpp"
#include "cilie/quotient.hpp"
#include "cilie/tangent.hpp"

namespace cilie {

using Report = nlohmann::ordered_json;

namespace detail {

/// Integers as JSON numbers when they fit, everything else as "p/q" strings.
inline Report rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

inline Report vector_json(const Vector& v) {
  Report out = Report::array();
  for (const auto& q : v) out.push_back(rational_json(q));
  return out;
}

inline Report matrix_json(const RatMatrix& m) {
  Report out = Report::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Report row = Report::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Report poly_matrix_json(const PolyMatrix& m) {
  Report out = Report::array();
  for (const auto& row : m.to_strings()) out.push_back(row);
  return out;
}

inline Report bracket_json(const SymmetricBracket& b) {
  Report out = Report::array();
  for (std::size_t k = 0; k < b.target_dim(); ++k) {
    RatMatrix m(b.source_dim(), b.source_dim());
    for (std::size_t i = 0; i < b.source_dim(); ++i)
      for (std::size_t j = 0; j < b.source_dim(); ++j) m(i, j) = b(i, j)[k];
    out.push_back(matrix_json(m));
  }
  return out;
}

inline Report polys_json(const std::vector<Poly>& ps) {
  Report out = Report::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline Report tangent_payload(const TangentLieAlgebra& g) {
  Report r;
  r["g1_dim"] = g.g1_dim;
  r["g2_dim"] = g.g2_dim;
  r["jacobian"] = matrix_json(g.fiber.jacobian);
  Report basis = Report::array();
  for (const auto& v : g.fiber.g1_basis) basis.push_back(vector_json(v));
  r["g1_basis"] = basis;
  r["g2_projection"] = matrix_json(g.fiber.g2_projection);
  r["bracket"] = bracket_json(g.bracket);
  r["bracket_rank"] = g.bracket.rank();
  return r;
}

inline Report resolution_payload(const FreeResolution& res) {
  Report r;
  r["betti"] = res.betti();
  r["twists"] = res.twists;
  Report ds = Report::object();
  for (std::size_t i = 1; i <= res.length(); ++i) ds["d" + std::to_string(i)] = poly_matrix_json(res.d(i));
  r["differentials"] = ds;
  return r;
}

inline Report ext_payload(const ExtModule& e) {
  Report r;
  r["dims"] = e.dims;
  Report ops = Report::object();
  for (std::size_t j = 0; j < e.chi.size(); ++j) {
    Report maps = Report::object();
    for (std::size_t i = 2; i < e.chi[j].size(); ++i)
      maps["Ext^" + std::to_string(i - 2) + " -> Ext^" + std::to_string(i)] = matrix_json(e.chi[j][i]);
    ops["chi" + std::to_string(j + 1)] = maps;
  }
  r["operators"] = ops;
  return r;
}

inline Report verdict_payload(const FGVerdict& v) {
  Report r;
  r["status"] = to_string(v.status);
  r["window"] = {v.window_lo, v.window_hi};
  r["generator_degrees"] = v.generator_degrees;
  r["minimal_generators"] = v.minimal_generators;
  r["offending_degrees"] = v.offending_degrees;
  if (v.certificate) {
    Report c;
    if (v.certificate->kind == FGCertificate::Kind::Periodic) {
      c["kind"] = "periodic";
      const std::size_t i = v.certificate->start;
      c["statement"] = "d" + std::to_string(i + 2) + " = d" + std::to_string(i) + " and d" + std::to_string(i + 3) +
                       " = d" + std::to_string(i + 1);
    } else {
      c["kind"] = "terminates";
      c["statement"] = "F" + std::to_string(v.certificate->start) + " = 0";
    }
    r["certificate"] = c;
  } else {
    r["certificate"] = nullptr;
  }
  return r;
}

inline Report cohomology_payload(const GradedCohomology& h) {
  Report r;
  r["from_degree"] = h.lo;
  r["dims"] = h.dims;
  return r;
}

inline RingPresentation ideal_ring(const Job& job) {
  return RingPresentation(job.ring, job.map, job.limits().groebner);
}

}  // namespace detail

/// Executes the job. Mathematical failures propagate as cilie::Error.
inline Report run_job(const Job& job, const std::string& digest) {
  Report report;
  report["command"] = job.command;
  report["input_digest"] = digest;
  Report params;
  Report result;
  Report checks = Report::object();
  const JobParameters& p = job.params;

  if (job.command == "tangent" || job.command == "chevalley") {
    const TangentLieAlgebra g = tangent_lie(job.map, *job.point);
    checks["direct = snake"] = g.constructions_agree;
    if (job.command == "tangent") {
      result = detail::tangent_payload(g);
    } else {
      params["degree"] = p.degree;
      const ChevalleyComplex ce = chevalley_cochain(g);
      result["even_generators"] = ce.even_count();
      result["odd_generators"] = ce.odd_count;
      result["differential"] = detail::polys_json(ce.differential);
      const GradedDims h = ce_cohomology(ce, p.degree);
      Report table = Report::object();
      for (std::size_t q = 0; q < h.dims.size(); ++q) table["H^" + std::to_string(q)] = h.dims[q];
      result["cohomology"] = table;
      checks["extract_bracket = bracket"] = extract_bracket(ce) == g.bracket;
      checks["d^2 = 0"] = differential_squares_to_zero(ce, p.degree);
    }
  } else if (job.command == "resolve") {
    params["degree"] = p.degree;
    const RingPresentation r = detail::ideal_ring(job);
    const FreeResolution res = minimal_resolution(r, job.module, p.degree, job.limits());
    result = detail::resolution_payload(res);
    checks["d^2 = 0"] = is_complex(r, res);
    checks["minimal"] = has_no_unit_entries(res);
  } else if (job.command == "ext") {
    params["degree"] = p.degree;
    const RingPresentation r = detail::ideal_ring(job);
    const ExtComputation e = ext_module(r, job.module, p.degree, job.limits());
    result = detail::ext_payload(e.ext);
    result["betti"] = e.resolution.betti();
    checks["operators are chain maps"] = operators_are_chain_maps(r, e.resolution, e.operators);
    checks["operators commute"] = operators_commute(e.ext, static_cast<std::size_t>(p.degree));
  } else if (job.command == "fgcheck") {
    params["window"] = {p.window.first, p.window.second};
    const RingPresentation r = detail::ideal_ring(job);
    const CoherenceReport c = coherence_report(r, job.module, p.window.first, p.window.second, job.limits());
    result["verdict"] = detail::verdict_payload(c.verdict);
    result["betti"] = c.computation.resolution.betti();
    result["ext_dims"] = c.computation.ext.dims;
    checks["operators are chain maps"] = c.chain_maps;
    checks["operators commute"] = c.operators_commute;
  } else if (job.command == "tower") {
    params["degree"] = p.degree;
    params["n"] = p.n;
    const RingPresentation t = tower_ring(job.map, p.n, job.ring, job.limits().groebner);
    result["hilbert_function"] = hilbert_function(t, p.degree);
    result["ambient_hilbert_function"] = hilbert_function(RingPresentation(job.ring, {}), p.degree);
  } else if (job.command == "squarezero") {
    params["n"] = p.n;
    const auto stages = square_zero_filtration(job.map, p.n, job.ring, job.limits().groebner);
    Report s = Report::array();
    for (std::size_t i = 0; i < stages.size(); ++i) {
      const unsigned k = p.n - 1 - static_cast<unsigned>(i);
      Report stage;
      stage["k"] = k;
      stage["square_zero"] = static_cast<bool>(stages[i]);
      s.push_back(stage);
    }
    result["stages"] = s;
    checks["all stages square-zero"] = std::all_of(stages.begin(), stages.end(), [](bool b) { return b; });
  } else if (job.command == "minimize") {
    params["degree"] = p.degree;
    const DGModule& in = *job.dg;
    const MinimalModel m = minimize_dg(in, p.degree);
    result["degrees"] = m.module.degrees;
    result["differential"] = detail::poly_matrix_json(m.module.differential);
    result["cancellations"] = m.cancellations;
    result["perfect"] = m.perfect;
    result["cohomology"] = detail::cohomology_payload(m.cohomology);
    checks["no unit entries"] = !has_unit_entries(m.module);
    checks["cohomology preserved"] = dg_cohomology(in, m.cohomology.lo, m.cohomology.hi).dims == m.cohomology.dims;
  }
  report["parameters"] = params.is_null() ? Report::object() : params;
  report["result"] = result;
  report["checks"] = checks;
  return report;
}

namespace detail {

inline bool is_scalar(const Report& v) { return !v.is_array() && !v.is_object(); }

inline std::string scalar_text(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

inline bool is_matrix(const Report& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Report& row) {
           return row.is_array() && std::all_of(row.begin(), row.end(), [](const Report& x) { return is_scalar(x); });
         });
}

inline std::string humanize(const std::string& key) {
  std::string out = key;
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

inline void render(std::ostringstream& os, const std::string& label, const Report& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_scalar(v)) {
    os << pad << label << ": " << scalar_text(v) << '\n';
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Report& x) { return is_scalar(x); })) {
    os << pad << label << ": [";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
    os << "]\n";
  } else if (is_matrix(v)) {
    os << pad << label << ":\n";
    std::size_t width = 1;
    for (const auto& row : v)
      for (const auto& x : row) width = std::max(width, scalar_text(x).size());
    for (const auto& row : v) {
      os << pad << "  ";
      if (row.empty()) os << "(empty row)";
      for (std::size_t i = 0; i < row.size(); ++i) {
        const std::string s = scalar_text(row[i]);
        os << (i ? "  " : "") << std::string(width - s.size(), ' ') << s;
      }
      os << '\n';
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) render(os, label + " " + std::to_string(i + 1), v[i], indent);
  } else {
    os << pad << label << ":\n";
    for (const auto& [k, x] : v.items()) render(os, humanize(k), x, indent + 2);
  }
}

}  // namespace detail

/// Aligned plain-text rendering of a report.
inline std::string render_text(const Report& report) {
  std::ostringstream os;
  for (const auto& [k, v] : report.items()) {
    if ((k == "parameters" || k == "checks") && v.empty()) continue;
    if (k == "result") {
      for (const auto& [rk, rv] : v.items()) detail::render(os, detail::humanize(rk), rv, 0);
    } else {
      detail::render(os, detail::humanize(k), v, 0);
    }
  }
  return os.str();
}

}  // namespace cilie
