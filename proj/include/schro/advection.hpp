#pragma once

// Circuits for the Schrodingerised upwind advection equation on a periodic
// grid. The upwind generator A splits as A = A1 + i A2 (A1, A2 Hermitian):
//
//   H_adv = sum_k (k - N_p/2) sum_alpha |a_alpha| (H_1)_alpha (x) |k><k|
//         + sum_alpha a_alpha (H_2)_alpha (x) I
//   H_1 = g1 [ sum_j (s_j^- + s_j^+) - 2 I + sigma01^(n) + sigma10^(n) ],  g1 = 1/(2hR)
//   H_2 = -i g2 [ sum_j (s_j^- - s_j^+) - sigma01^(n) + sigma10^(n) ],    g2 = 1/(2h)

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "schro/bounds.hpp"
#include "schro/heat.hpp"

namespace schro {

enum class WrapVariant { One, Two };

/// Basis change for the wrap-around coupling. Variant one maps |0>|1..1> to
/// (|0..0> + |1..1>)/sqrt(2); variant two to (|0..0> - i|1..1>)/sqrt(2),
/// which needs Phase(-pi/2) after the Hadamard.
inline Circuit b_wrap(WrapVariant variant, int n_x) {
  if (n_x < 2) throw DomainError("b_wrap needs n_x >= 2");
  Circuit c(n_x, variant == WrapVariant::One ? "B1" : "B2");
  for (int m = 1; m < n_x; ++m) c.push(gate::x(m));
  c.append(bell_basis(n_x, variant == WrapVariant::One ? 0.0 : std::numbers::pi / 2.0, n_x));
  return c;
}

/// exp(i g tau (sigma01^(n) + sigma10^(n))) for variant one and
/// exp(i g tau (i sigma01^(n) - i sigma10^(n))) for variant two; both exact.
inline Circuit u_wrap(WrapVariant variant, double tau, double gamma, int n_x) {
  const Circuit b = b_wrap(variant, n_x);
  Circuit c(n_x, variant == WrapVariant::One ? "U1(1)" : "U2(1)");
  c.append(dagger(b));
  c.push(gate::mcrz(n_x, qubit_range(1, n_x - 1), -2.0 * gamma * tau));
  c.append(b);
  return c;
}

/// V_1(tau) = Ph(-2 g1 tau) U_1^(1)(tau) prod_j W_j(g1 tau, 0).
inline Circuit v1(double tau, double gamma1, int n_x) {
  if (n_x < 2) throw DomainError("v1 needs n_x >= 2");
  Circuit c = w_product(gamma1 * tau, 0.0, n_x);
  c.append(u_wrap(WrapVariant::One, tau, gamma1, n_x));
  c.push(gate::global_phase(-2.0 * gamma1 * tau));
  c.set_label("V1");
  return c;
}

/// V_2(tau) = U_2^(1)(tau) prod_j W_j(g2 tau, -pi/2).
inline Circuit v2(double tau, double gamma2, int n_x) {
  if (n_x < 2) throw DomainError("v2 needs n_x >= 2");
  Circuit c = w_product(gamma2 * tau, -std::numbers::pi / 2.0, n_x);
  c.append(u_wrap(WrapVariant::Two, tau, gamma2, n_x));
  c.set_label("V2");
  return c;
}

/// prod_alpha (V_1(|a_alpha| tau))_alpha; zero velocities contribute nothing.
inline Circuit v1_tilde(double tau, double gamma1, const std::vector<double>& a_vec, int n_x) {
  const int d = static_cast<int>(a_vec.size());
  Circuit c(d * n_x, "V1~");
  for (int alpha = 1; alpha <= d; ++alpha) {
    const double a = a_vec[alpha - 1];
    if (a == 0.0) continue;
    c.append(embed(v1(std::abs(a) * tau, gamma1, n_x), d * n_x, (alpha - 1) * n_x));
  }
  return c;
}

/// prod_alpha (V_2(a_alpha tau))_alpha with signed velocities.
inline Circuit v2_tilde(double tau, double gamma2, const std::vector<double>& a_vec, int n_x) {
  const int d = static_cast<int>(a_vec.size());
  Circuit c(d * n_x, "V2~");
  for (int alpha = 1; alpha <= d; ++alpha) {
    const double a = a_vec[alpha - 1];
    if (a == 0.0) continue;
    c.append(embed(v2(a * tau, gamma2, n_x), d * n_x, (alpha - 1) * n_x));
  }
  return c;
}

/// Controlled powers of V~_1 on the p bits, then V~_1^{-N_p/2}, then V~_2.
inline Circuit v_adv(double tau, double gamma1, double gamma2, const std::vector<double>& a_vec,
                     const RegisterLayout& layout) {
  if (static_cast<int>(a_vec.size()) != layout.d) {
    throw DimensionError("velocity vector length differs from d");
  }
  Circuit c = controlled_power_ladder(v1_tilde(tau, gamma1, a_vec, layout.n_x), layout);
  c.append(embed(v2_tilde(tau, gamma2, a_vec, layout.n_x), layout.total(), 0));
  c.set_label("V_adv");
  return c;
}

inline SparseOperator h1_operator(double gamma1, int n_x) {
  const Eigen::Index n = Eigen::Index{1} << n_x;
  SparseOperator s(n, n);
  for (int j = 1; j <= n_x; ++j) s += s_minus_term(j, n_x) + s_plus_term(j, n_x);
  s -= 2.0 * identity_op(n);
  s += tensor_power(sigma01(), n_x) + tensor_power(sigma10(), n_x);
  return gamma1 * s;
}

inline SparseOperator h2_operator(double gamma2, int n_x) {
  const Eigen::Index n = Eigen::Index{1} << n_x;
  SparseOperator s(n, n);
  for (int j = 1; j <= n_x; ++j) s += s_minus_term(j, n_x) - s_plus_term(j, n_x);
  s -= tensor_power(sigma01(), n_x);
  s += tensor_power(sigma10(), n_x);
  return cplx(0.0, -gamma2) * s;
}

/// Block form assembled from H_1 and H_2.
inline DenseMatrix h_adv_dense(double gamma1, double gamma2, const std::vector<double>& a_vec,
                               const RegisterLayout& layout) {
  check_dense_cap(Eigen::Index{1} << layout.total());
  const GridSpec grid{layout.d, layout.n_x, 1.0, Boundary::Periodic};
  const SparseOperator h1 = h1_operator(gamma1, layout.n_x);
  const SparseOperator h2 = h2_operator(gamma2, layout.n_x);
  SparseOperator diss(grid.total_points(), grid.total_points());
  SparseOperator disp(grid.total_points(), grid.total_points());
  for (int alpha = 1; alpha <= layout.d; ++alpha) {
    const double a = a_vec.at(static_cast<std::size_t>(alpha - 1));
    if (a == 0.0) continue;
    diss += std::abs(a) * kron_place(h1, alpha, grid);
    disp += a * kron_place(h2, alpha, grid);
  }
  const SparseOperator ip = identity_op(std::int64_t{1} << layout.n_p);
  return DenseMatrix(kron(centered_index_diag(layout.n_p), diss) + kron(ip, disp));
}

struct AdvectionProblem {
  std::vector<double> a_vec{1.0};
  GridSpec grid{1, 2, 1.0, Boundary::Periodic};
  PGrid pgrid;
  double T = 0.0;
  std::int64_t r = 1;

  double gamma1() const { return 1.0 / (2.0 * grid.h() * pgrid.R); }
  double gamma2() const { return 1.0 / (2.0 * grid.h()); }
  double tau() const { return r > 0 ? T / static_cast<double>(r) : 0.0; }
  RegisterLayout layout() const { return {grid.d, grid.n_x, pgrid.n_p}; }

  void validate() const {
    grid.validate();
    if (grid.boundary != Boundary::Periodic) throw DomainError("advection problem needs periodic");
    if (grid.n_x < 2) throw DomainError("advection circuits need n_x >= 2");
    if (static_cast<int>(a_vec.size()) != grid.d) {
      throw DomainError("velocity vector has " + std::to_string(a_vec.size()) +
                        " entries for d=" + std::to_string(grid.d));
    }
    if (T < 0.0) throw DomainError("final time T must be >= 0");
    if (r < 0) throw DomainError("step count r must be >= 0");
    if (T > 0.0 && r == 0) throw DomainError("T > 0 needs r >= 1");
  }

  std::int64_t budget(double eps) const {
    return r_budget_adv(pgrid.N(), gamma1(), gamma2(), T, grid.n_x, a_vec, eps);
  }
};

inline Circuit v_adv(const AdvectionProblem& p) {
  p.validate();
  return v_adv(p.tau(), p.gamma1(), p.gamma2(), p.a_vec, p.layout());
}

/// Generator form: A1 (x) D_eta + A2 (x) I with (A1, A2) the Hermitian split
/// of the upwind operator.
inline DenseMatrix h_adv_dense(const AdvectionProblem& p) {
  p.validate();
  check_dense_cap(Eigen::Index{1} << p.layout().total());
  const auto [a1, a2] = hermitian_split(advection_generator(p.a_vec, p.grid));
  return DenseMatrix(kron(eta_diag(p.pgrid), a1) + kron(identity_op(p.pgrid.N()), a2));
}

struct AdvectionReport {
  PipelineResult result;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double step_bound = 0.0;
  double trotter_budget = 0.0;
  GateCounts step_counts;
  std::optional<std::int64_t> formula_cnot;
};

inline AdvectionReport adv_pipeline(const AdvectionProblem& p, const ComplexVector& u0,
                                    const PipelineOptions& opts = {}) {
  p.validate();
  if (u0.size() != p.grid.total_points()) {
    throw DimensionError("u0 has " + std::to_string(u0.size()) + " entries, grid has " +
                         std::to_string(p.grid.total_points()));
  }
  const RegisterLayout layout = p.layout();
  const Circuit step = p.r > 0 ? v_adv(p) : Circuit(layout.total());
  AdvectionReport rep;
  rep.result =
      run_schrodingerisation(step, p.r, advection_generator(p.a_vec, p.grid), u0, p.pgrid, p.T, opts);
  rep.gamma1 = p.gamma1();
  rep.gamma2 = p.gamma2();
  rep.step_bound = adv_step_bound(p.pgrid.N(), rep.gamma1, rep.gamma2, p.tau(), p.grid.n_x, p.a_vec);
  rep.trotter_budget = static_cast<double>(p.r) * rep.step_bound;
  rep.step_counts = count_native(v_adv(p.tau(), rep.gamma1, rep.gamma2, p.a_vec, layout));
  if (p.grid.n_x >= 3) {
    rep.formula_cnot = cnot_equivalent(CnotFormula::VAdv, p.grid.n_x, p.pgrid.n_p, p.grid.d);
  }
  return rep;
}

}  // namespace schro
