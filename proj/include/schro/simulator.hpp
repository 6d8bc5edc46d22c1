#pragma once

// Dense statevector simulation.
//
// RotationZ follows exp(-i theta Z / 2): |0> picks up e^{-i theta/2} and |1>
// picks up e^{+i theta/2}. Getting this sign wrong silently reverses every
// Trotter step, so tests pin it against hand-computed amplitudes.

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "schro/gates.hpp"

namespace schro {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kDefaultDenseCap = 12;
inline constexpr int kMaxStateQubits = 26;

class StateVector {
 public:
  StateVector() = default;

  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits) : StateVector(n_qubits, 0) {}

  StateVector(int n_qubits, std::uint64_t basis_index) : n_qubits_(n_qubits) {
    check_size(n_qubits);
    amps_ = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
    if (basis_index >= static_cast<std::uint64_t>(amps_.size())) {
      throw DimensionError("basis index out of range");
    }
    amps_(static_cast<Eigen::Index>(basis_index)) = 1.0;
  }

  StateVector(int n_qubits, ComplexVector amplitudes)
      : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_size(n_qubits);
    if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
      throw DimensionError("amplitude count " + std::to_string(amps_.size()) +
                           " is not 2^" + std::to_string(n_qubits));
    }
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  ComplexVector& amplitudes() { return amps_; }
  cplx operator[](Eigen::Index i) const { return amps_(i); }
  double norm() const { return amps_.norm(); }

 private:
  static void check_size(int n) {
    if (n < 0 || n > kMaxStateQubits) {
      throw CapacityError("statevector of " + std::to_string(n) + " qubits exceeds cap " +
                          std::to_string(kMaxStateQubits));
    }
  }

  int n_qubits_ = 0;
  ComplexVector amps_ = ComplexVector::Ones(1);
};

namespace detail {

inline std::uint64_t control_mask(const Gate& g) {
  std::uint64_t m = 0;
  for (int c : g.controls) m |= std::uint64_t{1} << (c - 1);
  return m;
}

// Applies [[a, b], [c, d]] on the target bit of every basis pair whose
// control bits are all set.
inline void apply_2x2(ComplexVector& v, std::uint64_t tbit, std::uint64_t cmask, cplx a, cplx b,
                      cplx c, cplx d) {
  const auto dim = static_cast<std::uint64_t>(v.size());
  cplx* amp = v.data();
  for (std::uint64_t hi = 0; hi < dim; hi += 2 * tbit) {
    for (std::uint64_t i = hi; i < hi + tbit; ++i) {
      if ((i & cmask) != cmask) continue;
      const cplx x0 = amp[i];
      const cplx x1 = amp[i | tbit];
      amp[i] = a * x0 + b * x1;
      amp[i | tbit] = c * x0 + d * x1;
    }
  }
}

inline void apply_diag(ComplexVector& v, std::uint64_t tbit, std::uint64_t cmask, cplx d0,
                       cplx d1) {
  const auto dim = static_cast<std::uint64_t>(v.size());
  cplx* amp = v.data();
  const bool touch_zero = d0 != cplx(1.0, 0.0);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cmask) != cmask) continue;
    if (i & tbit) {
      amp[i] *= d1;
    } else if (touch_zero) {
      amp[i] *= d0;
    }
  }
}

}  // namespace detail

inline void apply_inplace(StateVector& s, const Gate& g) {
  const int n = s.n_qubits();
  if (g.kind != GateKind::GlobalPhase && (g.target < 1 || g.target > n)) {
    throw CircuitError("gate target " + std::to_string(g.target) + " outside " +
                       std::to_string(n) + "-qubit state");
  }
  for (int c : g.controls) {
    if (c < 1 || c > n) throw CircuitError("gate control outside state");
  }
  auto& v = s.amplitudes();
  const std::uint64_t cmask = detail::control_mask(g);
  const std::uint64_t tbit = g.kind == GateKind::GlobalPhase ? 0 : std::uint64_t{1} << (g.target - 1);
  switch (g.kind) {
    case GateKind::Hadamard: {
      const double r = 1.0 / std::sqrt(2.0);
      detail::apply_2x2(v, tbit, cmask, r, r, r, -r);
      break;
    }
    case GateKind::PauliX:
      detail::apply_2x2(v, tbit, cmask, 0.0, 1.0, 1.0, 0.0);
      break;
    case GateKind::Phase:
      detail::apply_diag(v, tbit, cmask, 1.0, std::polar(1.0, g.param));
      break;
    case GateKind::RotationZ:
      detail::apply_diag(v, tbit, cmask, std::polar(1.0, -0.5 * g.param),
                         std::polar(1.0, 0.5 * g.param));
      break;
    case GateKind::GlobalPhase:
      v *= std::polar(1.0, g.param);
      break;
  }
}

inline StateVector apply(StateVector s, const Gate& g) {
  apply_inplace(s, g);
  return s;
}

inline void run_inplace(const Circuit& c, StateVector& s) {
  if (c.n_qubits() != s.n_qubits()) {
    throw DimensionError("circuit has " + std::to_string(c.n_qubits()) + " qubits, state has " +
                         std::to_string(s.n_qubits()));
  }
  for (const Gate& g : c.gates()) apply_inplace(s, g);
}

inline StateVector run(const Circuit& c, StateVector s) {
  run_inplace(c, s);
  return s;
}

/// Column k is run(c, |k>).
inline DenseMatrix dense_unitary(const Circuit& c, int cap = kDefaultDenseCap) {
  if (c.n_qubits() > cap) {
    throw CapacityError("dense unitary of " + std::to_string(c.n_qubits()) +
                        " qubits exceeds cap " + std::to_string(cap));
  }
  const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
  DenseMatrix u(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    StateVector s(c.n_qubits(), static_cast<std::uint64_t>(k));
    run_inplace(c, s);
    u.col(k) = s.amplitudes();
  }
  return u;
}

/// Largest singular value. Dense SVD up to dimension 2^10; power iteration on
/// M^H M above that (relative tolerance 1e-10, at most 10^4 iterations).
inline double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 1024 && m.cols() <= 1024) {
    Eigen::BDCSVD<DenseMatrix> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  ComplexVector x(m.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = cplx(gauss(rng), gauss(rng));
  x.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < 10000; ++it) {
    ComplexVector y = m.adjoint() * (m * x);
    const double next = y.norm();
    if (next == 0.0) return 0.0;
    x = y / next;
    if (std::abs(next - sigma2) <= 1e-10 * next) {
      sigma2 = next;
      break;
    }
    sigma2 = next;
  }
  return std::sqrt(sigma2);
}

inline double operator_norm_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("operator_norm_diff: shapes differ");
  }
  return spectral_norm(a - b);
}

inline double max_abs_entry(const DenseMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// One row per amplitude: index,real,imaginary.
inline void write_state_csv(const StateVector& s, std::ostream& os) {
  os << "index,real,imaginary\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    os << i << ',' << s[i].real() << ',' << s[i].imag() << '\n';
  }
}

}  // namespace schro
