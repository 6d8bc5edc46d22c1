#pragma once

// The full Schrodingerisation circuit shared by the heat and advection
// solvers:
//
//   |u0>|e^{-|p|}>  ->  Fourier over p  ->  V^r  ->  inverse Fourier  ->  project |p_k>
//
// The Fourier stage maps samples in p to the eta grid with kernel
// e^{+i eta p} (the adjoint of centered_dft_matrix); the closing stage
// applies centered_dft_matrix itself. With this pairing exp(i tau eta A1)
// transports e^{-|p|} in the direction that damps u for p > 0.

#include <cmath>
#include <optional>

#include "schro/fdm.hpp"
#include "schro/warp.hpp"

namespace schro {

enum class Evolution {
  Circuit,  // apply the Trotterized step circuit r times
  Exact,    // exact block-wise exp(i T (eta_k A1 + A2)); isolates the warp error
};

struct PipelineOptions {
  std::optional<std::int64_t> postselect_k;
  Evolution evolution = Evolution::Circuit;
};

struct PipelineResult {
  ComplexVector u_est;
  ComplexVector u_exact;
  double probability = 0.0;
  double predicted_probability = 0.0;
  double probability_total = 0.0;
  double fidelity = 0.0;
  double relative_error = 0.0;
  double v0_norm = 0.0;
  std::int64_t k = 0;
  double p_k = 0.0;
  std::int64_t r = 0;
  double tau = 0.0;
  int qubits = 0;
};

inline double fidelity(const ComplexVector& a, const ComplexVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.dot(b)) / (na * nb);
}

inline double relative_error(const ComplexVector& estimate, const ComplexVector& reference) {
  return (estimate - reference).norm() / reference.norm();
}

namespace detail {

// exp(i T (eta_k A1 + A2)) on every p block of an eta-space state.
inline void evolve_eta_blocks(StateVector& s, const PGrid& pg, const SparseOperator& generator,
                              int x_qubits, double T) {
  const auto [a1, a2] = hermitian_split(generator);
  const DenseMatrix d1(a1);
  const DenseMatrix d2(a2);
  const Eigen::Index nx = Eigen::Index{1} << x_qubits;
  for (std::int64_t k = 0; k < pg.N(); ++k) {
    const DenseMatrix h = pg.eta(k) * d1 + d2;
    auto block = s.amplitudes().segment(k * nx, nx);
    block = exp_i_hermitian(h, T) * ComplexVector(block);
  }
}

}  // namespace detail

/// Runs the pipeline for generator A (du/dt = A u) with one Trotter step
/// circuit `step` over the full d*n_x + n_p register.
inline PipelineResult run_schrodingerisation(const Circuit& step, std::int64_t r,
                                             const SparseOperator& generator,
                                             const ComplexVector& u0, const PGrid& pg, double T,
                                             const PipelineOptions& opts = {}) {
  if (r < 0) throw DomainError("step count r must be >= 0");
  if (generator.rows() != u0.size()) {
    throw DimensionError("initial data length does not match the generator");
  }
  WarpedState ws = initial_warped_state(u0, pg);
  const int total = ws.x_qubits + pg.n_p;
  if (opts.evolution == Evolution::Circuit && step.n_qubits() != total) {
    throw DimensionError("step circuit has " + std::to_string(step.n_qubits()) +
                         " qubits, pipeline register has " + std::to_string(total));
  }
  const Circuit to_eta = embed(dagger(centered_dft_circuit(pg)), total, ws.x_qubits);
  const Circuit to_p = embed(centered_dft_circuit(pg), total, ws.x_qubits);

  run_inplace(to_eta, ws.state);
  if (opts.evolution == Evolution::Circuit) {
    for (std::int64_t i = 0; i < r; ++i) run_inplace(step, ws.state);
  } else {
    detail::evolve_eta_blocks(ws.state, pg, generator, ws.x_qubits, T);
  }
  run_inplace(to_p, ws.state);

  const std::int64_t k = opts.postselect_k.value_or(default_postselect_index(pg));
  PostSelection sel = post_select(ws, pg, k);

  PipelineResult out;
  out.u_exact = evolve_exact(generator, u0, T);
  out.u_est = std::move(sel.u_est);
  out.probability = sel.probability;
  out.k = sel.k;
  out.p_k = sel.p_k;
  out.v0_norm = ws.v0_norm;
  out.predicted_probability =
      std::exp(-2.0 * sel.p_k) * out.u_exact.squaredNorm() / (ws.v0_norm * ws.v0_norm);
  out.probability_total = ws.state.amplitudes().squaredNorm();
  out.fidelity = fidelity(out.u_est, out.u_exact);
  out.relative_error = relative_error(out.u_est, out.u_exact);
  out.r = r;
  out.tau = r > 0 ? T / static_cast<double>(r) : 0.0;
  out.qubits = total;
  return out;
}

}  // namespace schro
