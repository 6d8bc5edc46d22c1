#pragma once

// JSON and CSV emitters for solve runs, verification reports and gate
// tallies. Everything here is deterministic: identical inputs give
// byte-identical output.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "schro/circuit_io.hpp"
#include "schro/config.hpp"
#include "schro/verify.hpp"

namespace schro {

inline nlohmann::json to_json(const GateCounts& g) {
  nlohmann::json m = nlohmann::json::object();
  for (const auto& [k, v] : g.mcrz_by_controls) m[std::to_string(k)] = v;
  return {{"single_qubit", g.single_qubit},
          {"cnot", g.cnot},
          {"controlled_other", g.controlled_other},
          {"mcrz_total", g.mcrz_total()},
          {"mcrz_by_controls", m}};
}

inline nlohmann::json to_json(const BoundReport& r) {
  return {{"name", r.name},
          {"params", r.params},
          {"kind", r.kind == CheckKind::Equality ? "equality" : "upper_bound"},
          {"formula", r.formula},
          {"measured", r.measured},
          {"pass", r.pass},
          {"margin", r.margin}};
}

inline nlohmann::json to_json(const SlopeReport& s) {
  nlohmann::json j{{"name", s.name}, {"params", s.params}, {"pass", s.pass}};
  j["slope"] = s.slope ? nlohmann::json(*s.slope) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const PipelineResult& r) {
  return {{"fidelity", r.fidelity},
          {"relative_error", r.relative_error},
          {"probability", r.probability},
          {"predicted_probability", r.predicted_probability},
          {"probability_ratio", r.probability / r.predicted_probability},
          {"probability_total", r.probability_total},
          {"v0_norm", r.v0_norm},
          {"postselect_k", r.k},
          {"p_k", r.p_k},
          {"r", r.r},
          {"tau", r.tau},
          {"qubits", r.qubits}};
}

struct SolveOutcome {
  nlohmann::json report;
  GridSpec grid;
  ComplexVector u_est;
  ComplexVector u_exact;
};

/// Runs one configured experiment end to end.
inline SolveOutcome run_solve(const ExperimentConfig& c) {
  validate(c);
  const ComplexVector u0 = initial_condition(c);
  PipelineOptions opts;
  opts.postselect_k = c.postselect_k;
  opts.evolution = c.evolution;

  SolveOutcome out;
  out.grid = c.grid();
  nlohmann::json j;
  j["config"] = to_json(c);
  if (c.equation == Equation::Heat) {
    const HeatProblem p = heat_problem(c);
    const HeatReport rep = heat_pipeline(p, u0, opts);
    j["result"] = to_json(rep.result);
    j["gamma0"] = rep.gamma0;
    j["bounds"] = {{"step_bound", rep.step_bound},
                   {"trotter_budget", rep.trotter_budget},
                   {"r_budget", p.budget(c.epsilon)}};
    j["gate_counts"] = {{"step_native", to_json(rep.step_counts)}};
    j["gate_counts"]["cnot_equivalent"] =
        rep.formula_cnot ? nlohmann::json(*rep.formula_cnot) : nlohmann::json(nullptr);
    out.u_est = rep.result.u_est;
    out.u_exact = rep.result.u_exact;
  } else {
    const AdvectionProblem p = advection_problem(c);
    const AdvectionReport rep = adv_pipeline(p, u0, opts);
    j["result"] = to_json(rep.result);
    j["gamma1"] = rep.gamma1;
    j["gamma2"] = rep.gamma2;
    j["bounds"] = {{"step_bound", rep.step_bound},
                   {"step_bound_statement",
                    adv_step_bound_statement(p.pgrid.N(), rep.gamma1, rep.gamma2, p.tau(), p.grid.n_x,
                                             p.a_vec)},
                   {"trotter_budget", rep.trotter_budget},
                   {"r_budget", p.budget(c.epsilon)}};
    j["gate_counts"] = {{"step_native", to_json(rep.step_counts)}};
    j["gate_counts"]["cnot_equivalent"] =
        rep.formula_cnot ? nlohmann::json(*rep.formula_cnot) : nlohmann::json(nullptr);
    out.u_est = rep.result.u_est;
    out.u_exact = rep.result.u_exact;
  }
  out.report = std::move(j);
  return out;
}

namespace detail {
inline std::string g17(double v) { return format_angle(v); }
}  // namespace detail

/// Columns i1..id, re, im, exact_re, exact_im; one row per grid point.
inline void write_solution_csv(std::ostream& os, const GridSpec& g, const ComplexVector& u_est,
                               const ComplexVector& u_exact) {
  for (int alpha = 1; alpha <= g.d; ++alpha) os << 'i' << alpha << ',';
  os << "re,im,exact_re,exact_im\n";
  const Eigen::Index n = g.points();
  for (Eigen::Index flat = 0; flat < u_est.size(); ++flat) {
    Eigen::Index rest = flat;
    for (int alpha = 0; alpha < g.d; ++alpha) {
      os << rest % n << ',';
      rest /= n;
    }
    os << detail::g17(u_est[flat].real()) << ',' << detail::g17(u_est[flat].imag()) << ','
       << detail::g17(u_exact[flat].real()) << ',' << detail::g17(u_exact[flat].imag()) << '\n';
  }
}

inline void write_bounds_csv(std::ostream& os, const std::vector<BoundReport>& reports) {
  os << "name,params,kind,formula,measured,pass,margin\n";
  for (const auto& r : reports) {
    os << r.name << ",\"" << r.params << "\"," << (r.kind == CheckKind::Equality ? "equality" : "upper_bound")
       << ',' << detail::g17(r.formula) << ',' << detail::g17(r.measured) << ','
       << (r.pass ? "true" : "false") << ',' << detail::g17(r.margin) << '\n';
  }
}

inline void write_slopes_csv(std::ostream& os, const std::vector<SlopeReport>& slopes) {
  os << "name,params,slope,pass\n";
  for (const auto& s : slopes) {
    os << s.name << ",\"" << s.params << "\"," << (s.slope ? detail::g17(*s.slope) : std::string("skipped"))
       << ',' << (s.pass ? "true" : "false") << '\n';
  }
}

}  // namespace schro
