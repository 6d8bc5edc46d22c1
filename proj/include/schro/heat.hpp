#pragma once

// Circuits for the Schrodingerised heat equation with homogeneous Dirichlet
// data and the central-difference Laplacian.
//
//   H_heat = sum_k (k - N_p/2) sum_alpha (H_0)_alpha (x) |k><k|
//   H_0    = g0 [ sum_j (s_j^- + s_j^+) - 2 I ],   g0 = a / (h^2 R)
//
// One step V_heat(tau) applies V~_0^{2^m} controlled on bit m of the p
// register for every m, then V~_0^{-N_p/2}, so the k-th block carries
// V~_0^{k - N_p/2}.

#include <numeric>
#include <optional>
#include <vector>

#include "schro/bounds.hpp"
#include "schro/fdm.hpp"
#include "schro/gates.hpp"
#include "schro/pipeline.hpp"
#include "schro/warp.hpp"

namespace schro {

/// B_j(lambda) = (prod_m CNOT_m^j) P_j(-lambda) H_j: maps |0>|1..1> on qubits
/// j..1 to (|0>|1..1> + e^{-i lambda}|1>|0..0>)/sqrt(2). CNOT_m^j targets m
/// and is controlled by j. The phase gate is dropped when lambda == 0.
inline Circuit bell_basis(int j, double lambda, int n_x) {
  if (j < 1 || j > n_x) {
    throw DomainError("bell_basis: j=" + std::to_string(j) + " outside 1.." + std::to_string(n_x));
  }
  Circuit c(n_x, "B_" + std::to_string(j));
  c.push(gate::h(j));
  if (lambda != 0.0) c.push(gate::phase(j, -lambda));
  for (int m = 1; m < j; ++m) c.push(gate::cnot(j, m));
  return c;
}

inline std::vector<int> qubit_range(int first, int last) {
  std::vector<int> out;
  for (int q = first; q <= last; ++q) out.push_back(q);
  return out;
}

/// W_j(g tau, lambda) = B_j CRZ_j^{1..j-1}(-2 g tau) B_j^H, which equals
/// exp(i g tau (e^{i lambda} s_j^- + e^{-i lambda} s_j^+)) exactly.
inline Circuit w_gate(int j, double gamma_tau, double lambda, int n_x) {
  const Circuit b = bell_basis(j, lambda, n_x);
  Circuit c(n_x, "W_" + std::to_string(j));
  c.append(dagger(b));
  c.push(gate::mcrz(j, qubit_range(1, j - 1), -2.0 * gamma_tau));
  c.append(b);
  return c;
}

/// Product of W_j(g tau, lambda) for j = 1..n_x in circuit order.
inline Circuit w_product(double gamma_tau, double lambda, int n_x) {
  Circuit c(n_x);
  for (int j = 1; j <= n_x; ++j) c.append(w_gate(j, gamma_tau, lambda, n_x));
  return c;
}

/// V_0(tau) = Ph(-2 g0 tau) prod_j W_j(g0 tau, 0), approximating exp(i H_0 tau).
inline Circuit v0(double tau, double gamma0, int n_x) {
  if (n_x < 1) throw DomainError("v0 needs n_x >= 1");
  Circuit c = w_product(gamma0 * tau, 0.0, n_x);
  c.push(gate::global_phase(-2.0 * gamma0 * tau));
  c.set_label("V0");
  return c;
}

/// V_0 on each of the d x-registers, dimension 1 first.
inline Circuit v0_tilde(double tau, double gamma0, int n_x, int d) {
  if (d < 1) throw DomainError("v0_tilde needs d >= 1");
  const Circuit one = v0(tau, gamma0, n_x);
  Circuit c(d * n_x, "V0~");
  for (int alpha = 1; alpha <= d; ++alpha) c.append(embed(one, d * n_x, (alpha - 1) * n_x));
  return c;
}

/// Binary controlled-power construction shared by V_heat and V_adv: the
/// x-register unitary `base` (on layout.x_qubits()) is raised to
/// k - N_p/2 in the k-th p block.
inline Circuit controlled_power_ladder(const Circuit& base, const RegisterLayout& layout) {
  if (layout.total() > kMaxStateQubits) {
    throw CapacityError("register of " + std::to_string(layout.total()) +
                        " qubits exceeds cap " + std::to_string(kMaxStateQubits));
  }
  if (base.n_qubits() != layout.x_qubits()) {
    throw DimensionError("ladder base must act on the x-registers only");
  }
  const int total = layout.total();
  const Circuit wide = embed(base, total, 0);
  Circuit c(total);
  for (int m = 0; m < layout.n_p; ++m) {
    const Circuit lifted = lift_controlled(wide, {layout.p_qubit(m)});
    c.append(repeat(lifted, std::int64_t{1} << m));
  }
  c.append(power(wide, -(std::int64_t{1} << (layout.n_p - 1))));
  return c;
}

inline Circuit v_heat(double tau, double gamma0, const RegisterLayout& layout) {
  Circuit c = controlled_power_ladder(v0_tilde(tau, gamma0, layout.n_x, layout.d), layout);
  c.set_label("V_heat");
  return c;
}

/// H_0 = g0 [ sum_j (s_j^- + s_j^+) - 2 I ] assembled from the tensor strings.
inline SparseOperator h0_operator(double gamma0, int n_x) {
  SparseOperator s(Eigen::Index{1} << n_x, Eigen::Index{1} << n_x);
  for (int j = 1; j <= n_x; ++j) s += s_minus_term(j, n_x) + s_plus_term(j, n_x);
  s -= 2.0 * identity_op(Eigen::Index{1} << n_x);
  return gamma0 * s;
}

/// diag(k - N_p/2) over the p register.
inline SparseOperator centered_index_diag(int n_p) {
  const std::int64_t n = std::int64_t{1} << n_p;
  SparseOperator m(n, n);
  for (std::int64_t k = 0; k < n; ++k) {
    if (k != n / 2) m.insert(k, k) = static_cast<double>(k - n / 2);
  }
  return m;
}

/// diag(eta_k) over the p register.
inline SparseOperator eta_diag(const PGrid& pg) {
  SparseOperator m(pg.N(), pg.N());
  for (std::int64_t k = 0; k < pg.N(); ++k) {
    if (pg.eta(k) != 0.0) m.insert(k, k) = pg.eta(k);
  }
  return m;
}

/// Block form: sum_k (k - N_p/2) sum_alpha (H_0)_alpha (x) |k><k|.
inline DenseMatrix h_heat_dense(double gamma0, const RegisterLayout& layout) {
  check_dense_cap(Eigen::Index{1} << layout.total());
  const GridSpec grid{layout.d, layout.n_x, 1.0, Boundary::Dirichlet};
  const SparseOperator h0 = h0_operator(gamma0, layout.n_x);
  SparseOperator sum(grid.total_points(), grid.total_points());
  for (int alpha = 1; alpha <= layout.d; ++alpha) sum += kron_place(h0, alpha, grid);
  return DenseMatrix(kron(centered_index_diag(layout.n_p), sum));
}

struct HeatProblem {
  double a = 1.0;
  GridSpec grid;
  PGrid pgrid;
  double T = 0.0;
  std::int64_t r = 1;

  double gamma0() const { return a / (grid.h() * grid.h() * pgrid.R); }
  double tau() const { return r > 0 ? T / static_cast<double>(r) : 0.0; }
  RegisterLayout layout() const { return {grid.d, grid.n_x, pgrid.n_p}; }

  void validate() const {
    grid.validate();
    if (grid.boundary != Boundary::Dirichlet) throw DomainError("heat problem needs dirichlet");
    if (!(a > 0.0)) throw DomainError("diffusivity a must be > 0");
    if (T < 0.0) throw DomainError("final time T must be >= 0");
    if (r < 0) throw DomainError("step count r must be >= 0");
    if (T > 0.0 && r == 0) throw DomainError("T > 0 needs r >= 1");
  }

  /// Smallest r meeting the accumulated bound r * step_bound <= eps.
  std::int64_t budget(double eps) const {
    return r_budget_heat(grid.d, pgrid.N(), gamma0(), T, grid.n_x, eps);
  }
};

inline Circuit v_heat(const HeatProblem& p) {
  p.validate();
  return v_heat(p.tau(), p.gamma0(), p.layout());
}

/// Generator form: (a sum_alpha (D_D^Laplacian)_alpha) (x) D_eta.
inline DenseMatrix h_heat_dense(const HeatProblem& p) {
  p.validate();
  check_dense_cap(Eigen::Index{1} << p.layout().total());
  return DenseMatrix(kron(eta_diag(p.pgrid), heat_generator(p.a, p.grid)));
}

struct HeatReport {
  PipelineResult result;
  double gamma0 = 0.0;
  double step_bound = 0.0;
  double trotter_budget = 0.0;  // r * step_bound
  GateCounts step_counts;
  std::optional<std::int64_t> formula_cnot;
};

inline HeatReport heat_pipeline(const HeatProblem& p, const ComplexVector& u0,
                                const PipelineOptions& opts = {}) {
  p.validate();
  if (u0.size() != p.grid.total_points()) {
    throw DimensionError("u0 has " + std::to_string(u0.size()) + " entries, grid has " +
                         std::to_string(p.grid.total_points()));
  }
  const RegisterLayout layout = p.layout();
  const Circuit step = p.r > 0 ? v_heat(p) : Circuit(layout.total());
  HeatReport rep;
  rep.result = run_schrodingerisation(step, p.r, heat_generator(p.a, p.grid), u0, p.pgrid, p.T, opts);
  rep.gamma0 = p.gamma0();
  rep.step_bound = heat_step_bound(p.grid.d, p.pgrid.N(), rep.gamma0, p.tau(), p.grid.n_x);
  rep.trotter_budget = static_cast<double>(p.r) * rep.step_bound;
  rep.step_counts = count_native(v_heat(p.tau(), rep.gamma0, layout));
  if (p.grid.n_x >= 3) {
    rep.formula_cnot = cnot_equivalent(CnotFormula::VHeat, p.grid.n_x, p.pgrid.n_p, p.grid.d);
  }
  return rep;
}

}  // namespace schro
