#pragma once

// Warped-phase machinery: the auxiliary p grid, the e^{-|p|} initial state,
// the centered discrete Fourier transform over the p register, and recovery
// of u(T) by projecting onto one grid point p_k > 0.

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "schro/fdm.hpp"
#include "schro/simulator.hpp"

namespace schro {

/// p_k = -pi R + k dp with dp = 2 pi R / N_p, eta_k = (k - N_p/2) / R.
struct PGrid {
  double R = 1.0;
  int n_p = 1;

  std::int64_t N() const { return std::int64_t{1} << n_p; }
  double dp() const { return 2.0 * std::numbers::pi * R / static_cast<double>(N()); }
  double p(std::int64_t k) const { return -std::numbers::pi * R + static_cast<double>(k) * dp(); }
  double eta(std::int64_t k) const {
    return (static_cast<double>(k) - static_cast<double>(N()) / 2.0) / R;
  }
  /// k - N_p/2, the integer power applied to the k-th block.
  std::int64_t centered(std::int64_t k) const { return k - N() / 2; }
};

inline PGrid make_pgrid(double R, int n_p) {
  if (!(R > 0.0)) throw DomainError("R must be > 0");
  if (n_p < 1) throw DomainError("n_p must be >= 1");
  return PGrid{R, n_p};
}

/// Qubit layout of the joint register: x-registers for dimensions 1..d on the
/// low qubits (dimension 1 lowest), then the n_p-qubit p register on top.
/// Bit m of the p index k sits on qubit d*n_x + m + 1.
struct RegisterLayout {
  int d = 1;
  int n_x = 1;
  int n_p = 1;

  int x_qubits() const { return d * n_x; }
  int total() const { return d * n_x + n_p; }
  int x_offset(int alpha) const { return (alpha - 1) * n_x; }
  int p_offset() const { return d * n_x; }
  int p_qubit(int bit) const { return p_offset() + bit + 1; }
};

struct WarpedState {
  StateVector state;
  double v0_norm = 0.0;
  int x_qubits = 0;
  int n_p = 0;
};

inline int qubits_for(Eigen::Index n) {
  int q = 0;
  while ((Eigen::Index{1} << q) < n) ++q;
  if ((Eigen::Index{1} << q) != n) {
    throw DimensionError("length " + std::to_string(n) + " is not a power of two");
  }
  return q;
}

/// Normalized samples of u0_j e^{-|p_k|}; the pre-normalization norm is kept
/// for rescaling after post-selection.
inline WarpedState initial_warped_state(const ComplexVector& u0, const PGrid& pg) {
  const int xq = qubits_for(u0.size());
  const double un = u0.norm();
  if (!(un > 0.0)) throw DomainError("initial data has zero norm");
  const Eigen::Index nx = u0.size();
  ComplexVector v(nx * pg.N());
  for (std::int64_t k = 0; k < pg.N(); ++k) {
    v.segment(k * nx, nx) = std::exp(-std::abs(pg.p(k))) * u0;
  }
  const double vn = v.norm();
  return WarpedState{StateVector(xq + pg.n_p, v / vn), vn, xq, pg.n_p};
}

/// F_{kj} = e^{-i eta_k p_j} / sqrt(N_p).
inline DenseMatrix centered_dft_matrix(const PGrid& pg) {
  const std::int64_t n = pg.N();
  DenseMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t j = 0; j < n; ++j) {
      // eta_k p_j = 2 pi (k - N/2)(j - N/2) / N, reduced mod N to keep the angle small.
      const std::int64_t prod = ((pg.centered(k) * pg.centered(j)) % n + n) % n;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(prod) / static_cast<double>(n);
      f(k, j) = std::polar(scale, angle);
    }
  }
  return f;
}

/// Standard QFT |j> -> N^{-1/2} sum_k e^{+2 pi i jk/N} |k>, with the
/// bit-reversal swaps written as CNOT triples.
inline Circuit qft_circuit(int n) {
  Circuit c(n, "qft");
  for (int b = n; b >= 1; --b) {
    c.push(gate::h(b));
    for (int ctl = b - 1; ctl >= 1; --ctl) {
      const double angle = 2.0 * std::numbers::pi / static_cast<double>(std::int64_t{1} << (b - ctl + 1));
      c.push(Gate{GateKind::Phase, b, {ctl}, angle});
    }
  }
  for (int q = 1; q <= n / 2; ++q) {
    const int other = n + 1 - q;
    c.push(gate::cnot(q, other));
    c.push(gate::cnot(other, q));
    c.push(gate::cnot(q, other));
  }
  return c;
}

/// Circuit form of centered_dft_matrix on n_p qubits:
/// F = e^{-i pi N/2} diag((-1)^k) QFT^H diag((-1)^j).
inline Circuit centered_dft_circuit(const PGrid& pg) {
  const int n = pg.n_p;
  Circuit c(n, "centered_dft");
  c.push(gate::phase(1, std::numbers::pi));
  c.append(dagger(qft_circuit(n)));
  c.push(gate::phase(1, std::numbers::pi));
  // e^{-i pi N/2} is -1 only for N = 2.
  if ((pg.N() / 2) % 2 != 0) c.push(gate::global_phase(-std::numbers::pi));
  c.set_label("centered_dft");
  return c;
}

/// Smallest k with p_k > 0; this maximizes the success probability e^{-2 p_k}.
inline std::int64_t default_postselect_index(const PGrid& pg) {
  for (std::int64_t k = 0; k < pg.N(); ++k) {
    if (pg.p(k) > 0.0) return k;
  }
  throw DomainError("p grid has no positive point");
}

struct PostSelection {
  ComplexVector u_est;
  double probability = 0.0;
  std::int64_t k = 0;
  double p_k = 0.0;
};

/// Projects the p register onto |k>. u_est is the slice rescaled by
/// e^{p_k} ||v(0)||, an estimate of the unnormalized u(T).
inline PostSelection post_select(const WarpedState& final_state, const PGrid& pg, std::int64_t k) {
  if (k < 0 || k >= pg.N()) throw DomainError("post-selection index out of range");
  const double pk = pg.p(k);
  if (!(pk > 0.0)) {
    throw DomainError("post-selection needs p_k > 0 (k=" + std::to_string(k) +
                      " has p_k=" + std::to_string(pk) + ")");
  }
  const Eigen::Index nx = Eigen::Index{1} << final_state.x_qubits;
  const ComplexVector slice = final_state.state.amplitudes().segment(k * nx, nx);
  return PostSelection{slice * (std::exp(pk) * final_state.v0_norm), slice.squaredNorm(), k, pk};
}

/// Probability of every p outcome; sums to one for a normalized state.
inline std::vector<double> p_register_distribution(const WarpedState& ws) {
  const Eigen::Index nx = Eigen::Index{1} << ws.x_qubits;
  const std::int64_t np = std::int64_t{1} << ws.n_p;
  std::vector<double> out(static_cast<std::size_t>(np));
  for (std::int64_t k = 0; k < np; ++k) {
    out[static_cast<std::size_t>(k)] = ws.state.amplitudes().segment(k * nx, nx).squaredNorm();
  }
  return out;
}

}  // namespace schro
