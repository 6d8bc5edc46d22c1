#pragma once

// Named circuit catalogue used by the export and count commands.

#include <string>
#include <vector>

#include "schro/advection.hpp"
#include "schro/heat.hpp"
#include "schro/warp.hpp"

namespace schro {

struct CircuitArgs {
  int n_x = 3;
  int j = 1;
  double lambda = 0.0;
  double tau = 0.1;
  double gamma = 1.0;   // g0 for heat circuits, g1 for advection circuits
  double gamma2 = 1.0;  // advection dispersive coefficient
  int d = 1;
  int n_p = 2;
  double R = 1.0;
  std::vector<double> a_vec{1.0};
};

inline const std::vector<std::string>& circuit_names() {
  static const std::vector<std::string> names{"w",  "b",  "b1", "b2", "u1",     "u2",   "v0",  "v1",
                                              "v2", "v0_tilde", "v1_tilde", "v2_tilde", "v_heat",
                                              "v_adv", "qft", "dft"};
  return names;
}

inline Circuit build_named_circuit(const std::string& name, const CircuitArgs& a) {
  if (a.n_x < 1) throw DomainError("n_x must be >= 1 (got " + std::to_string(a.n_x) + ")");
  const RegisterLayout layout{a.d, a.n_x, a.n_p};
  if (name == "w") return w_gate(a.j, a.gamma * a.tau, a.lambda, a.n_x);
  if (name == "b") return bell_basis(a.j, a.lambda, a.n_x);
  if (name == "b1") return b_wrap(WrapVariant::One, a.n_x);
  if (name == "b2") return b_wrap(WrapVariant::Two, a.n_x);
  if (name == "u1") return u_wrap(WrapVariant::One, a.tau, a.gamma, a.n_x);
  if (name == "u2") return u_wrap(WrapVariant::Two, a.tau, a.gamma, a.n_x);
  if (name == "v0") return v0(a.tau, a.gamma, a.n_x);
  if (name == "v1") return v1(a.tau, a.gamma, a.n_x);
  if (name == "v2") return v2(a.tau, a.gamma2, a.n_x);
  if (name == "v0_tilde") return v0_tilde(a.tau, a.gamma, a.n_x, a.d);
  if (name == "v1_tilde") return v1_tilde(a.tau, a.gamma, a.a_vec, a.n_x);
  if (name == "v2_tilde") return v2_tilde(a.tau, a.gamma2, a.a_vec, a.n_x);
  if (name == "v_heat") return v_heat(a.tau, a.gamma, layout);
  if (name == "v_adv") return v_adv(a.tau, a.gamma, a.gamma2, a.a_vec, layout);
  if (name == "qft") return qft_circuit(a.n_p);
  if (name == "dft") return centered_dft_circuit(make_pgrid(a.R, a.n_p));
  throw DomainError("unknown circuit '" + name + "'");
}

inline CnotFormula parse_formula(const std::string& s) {
  for (CnotFormula f : {CnotFormula::V0, CnotFormula::ControlledV0, CnotFormula::V1, CnotFormula::V2,
                        CnotFormula::ControlledV1, CnotFormula::VHeat, CnotFormula::VAdv}) {
    if (s == formula_name(f)) return f;
  }
  throw DomainError("unknown formula '" + s + "'");
}

}  // namespace schro
