#pragma once

// Classical side: shift and difference operators on N_x = 2^{n_x} points,
// their Kronecker placement in d dimensions, the heat and upwind advection
// generators, and reference time evolution.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "schro/simulator.hpp"

namespace schro {

using SparseOperator = Eigen::SparseMatrix<cplx>;

inline constexpr Eigen::Index kDenseEvolutionCap = Eigen::Index{1} << 12;

enum class Boundary { Dirichlet, Periodic };

inline const char* boundary_name(Boundary b) {
  return b == Boundary::Dirichlet ? "dirichlet" : "periodic";
}

struct GridSpec {
  int d = 1;
  int n_x = 1;
  double L = 1.0;
  Boundary boundary = Boundary::Dirichlet;

  Eigen::Index points() const { return Eigen::Index{1} << n_x; }
  double h() const { return L / static_cast<double>(points()); }
  Eigen::Index total_points() const { return Eigen::Index{1} << (d * n_x); }

  void validate() const {
    if (d < 1) throw DomainError("grid dimension d must be >= 1");
    if (n_x < 1) throw DomainError("n_x must be >= 1");
    if (!(L > 0.0)) throw DomainError("domain length L must be > 0");
  }
};

inline SparseOperator identity_op(Eigen::Index dim) {
  SparseOperator id(dim, dim);
  id.setIdentity();
  return id;
}

/// |0><1|
inline SparseOperator sigma01() {
  SparseOperator m(2, 2);
  m.insert(0, 1) = 1.0;
  return m;
}

/// |1><0|
inline SparseOperator sigma10() {
  SparseOperator m(2, 2);
  m.insert(1, 0) = 1.0;
  return m;
}

inline SparseOperator kron(const SparseOperator& a, const SparseOperator& b) {
  SparseOperator out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

inline SparseOperator tensor_power(const SparseOperator& m, int n) {
  SparseOperator out = identity_op(1);
  for (int i = 0; i < n; ++i) out = kron(out, m);
  return out;
}

/// s_j^- = I^{(n_x - j)} (x) sigma01 (x) sigma10^{(j - 1)}
inline SparseOperator s_minus_term(int j, int n_x) {
  if (j < 1 || j > n_x) throw DomainError("s_j^- needs 1 <= j <= n_x");
  return kron(kron(identity_op(Eigen::Index{1} << (n_x - j)), sigma01()),
              tensor_power(sigma10(), j - 1));
}

/// s_j^+ = I^{(n_x - j)} (x) sigma10 (x) sigma01^{(j - 1)}
inline SparseOperator s_plus_term(int j, int n_x) {
  if (j < 1 || j > n_x) throw DomainError("s_j^+ needs 1 <= j <= n_x");
  return kron(kron(identity_op(Eigen::Index{1} << (n_x - j)), sigma10()),
              tensor_power(sigma01(), j - 1));
}

enum class ShiftDirection { Minus, Plus };

/// S^- = sum_{j >= 1} |j-1><j| and S^+ = (S^-)^H, assembled entrywise.
inline SparseOperator shift(ShiftDirection dir, int n_x) {
  if (n_x < 1) throw DomainError("shift needs n_x >= 1");
  const Eigen::Index n = Eigen::Index{1} << n_x;
  std::vector<Eigen::Triplet<cplx>> t;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (dir == ShiftDirection::Minus) {
      t.emplace_back(j - 1, j, 1.0);
    } else {
      t.emplace_back(j, j - 1, 1.0);
    }
  }
  SparseOperator out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

enum class DiffKind { Forward, Backward, Central, Laplacian };

/// One-dimensional difference operator on the grid's n_x qubits. First-order
/// operators scale 1/h, the Laplacian 1/h^2. Periodic variants add the
/// sigma01^{(n_x)} / sigma10^{(n_x)} wrap-around corners.
inline SparseOperator diff_op(DiffKind kind, Boundary bc, const GridSpec& grid) {
  grid.validate();
  const int n = grid.n_x;
  const double h = grid.h();
  const SparseOperator sm = shift(ShiftDirection::Minus, n);
  const SparseOperator sp = shift(ShiftDirection::Plus, n);
  const SparseOperator id = identity_op(grid.points());
  const bool periodic = bc == Boundary::Periodic;
  const SparseOperator wrap01 = tensor_power(sigma01(), n);
  const SparseOperator wrap10 = tensor_power(sigma10(), n);
  SparseOperator out;
  switch (kind) {
    case DiffKind::Forward:
      out = sm - id;
      if (periodic) out += wrap10;
      out /= h;
      break;
    case DiffKind::Backward:
      out = id - sp;
      if (periodic) out -= wrap01;
      out /= h;
      break;
    case DiffKind::Central:
      out = sm - sp;
      if (periodic) out += wrap10 - wrap01;
      out /= 2.0 * h;
      break;
    case DiffKind::Laplacian:
      out = sm + sp - 2.0 * id;
      if (periodic) out += wrap01 + wrap10;
      out /= h * h;
      break;
  }
  out.prune(cplx(0.0, 0.0));
  out.makeCompressed();
  return out;
}

/// (op)_alpha = I^{(d - alpha) n_x} (x) op (x) I^{(alpha - 1) n_x}; dimension 1
/// therefore occupies the least significant qubits.
inline SparseOperator kron_place(const SparseOperator& op, int alpha, const GridSpec& grid) {
  if (alpha < 1 || alpha > grid.d) {
    throw DomainError("kron_place: alpha=" + std::to_string(alpha) + " outside 1.." +
                      std::to_string(grid.d));
  }
  if (op.rows() != grid.points() || op.cols() != grid.points()) {
    throw DimensionError("kron_place: operator does not match 2^n_x");
  }
  const Eigen::Index left = Eigen::Index{1} << ((grid.d - alpha) * grid.n_x);
  const Eigen::Index right = Eigen::Index{1} << ((alpha - 1) * grid.n_x);
  return kron(kron(identity_op(left), op), identity_op(right));
}

/// a * sum_alpha (D_D^Laplacian)_alpha, homogeneous Dirichlet.
inline SparseOperator heat_generator(double a, const GridSpec& grid) {
  grid.validate();
  if (grid.boundary != Boundary::Dirichlet) {
    throw DomainError("heat generator needs a dirichlet grid");
  }
  const SparseOperator lap = diff_op(DiffKind::Laplacian, Boundary::Dirichlet, grid);
  SparseOperator out(grid.total_points(), grid.total_points());
  for (int alpha = 1; alpha <= grid.d; ++alpha) out += kron_place(lap, alpha, grid);
  out *= a;
  out.prune(cplx(0.0, 0.0));
  return out;
}

/// Upwind: a_alpha (D_P^+)_alpha where a_alpha > 0, a_alpha (D_P^-)_alpha where
/// a_alpha < 0; zero velocities contribute nothing.
inline SparseOperator advection_generator(const std::vector<double>& a_vec, const GridSpec& grid) {
  grid.validate();
  if (grid.boundary != Boundary::Periodic) {
    throw DomainError("advection generator needs a periodic grid");
  }
  if (static_cast<int>(a_vec.size()) != grid.d) {
    throw DimensionError("velocity vector has " + std::to_string(a_vec.size()) +
                         " entries for d=" + std::to_string(grid.d));
  }
  const SparseOperator fwd = diff_op(DiffKind::Forward, Boundary::Periodic, grid);
  const SparseOperator bwd = diff_op(DiffKind::Backward, Boundary::Periodic, grid);
  SparseOperator out(grid.total_points(), grid.total_points());
  for (int alpha = 1; alpha <= grid.d; ++alpha) {
    const double a = a_vec[alpha - 1];
    if (a == 0.0) continue;
    out += cplx(a, 0.0) * kron_place(a > 0.0 ? fwd : bwd, alpha, grid);
  }
  out.prune(cplx(0.0, 0.0));
  return out;
}

/// A = A1 + i A2 with A1 = (A + A^H)/2 and A2 = (A - A^H)/(2i), both Hermitian.
inline std::pair<SparseOperator, SparseOperator> hermitian_split(const SparseOperator& a) {
  if (a.rows() != a.cols()) throw DimensionError("hermitian_split needs a square operator");
  const SparseOperator ah = a.adjoint();
  SparseOperator a1 = 0.5 * (a + ah);
  SparseOperator a2 = cplx(0.0, -0.5) * (a - ah);
  a1.prune(cplx(0.0, 0.0));
  a2.prune(cplx(0.0, 0.0));
  return {a1, a2};
}

inline void check_dense_cap(Eigen::Index dim) {
  if (dim > kDenseEvolutionCap) {
    throw CapacityError("dense evolution of dimension " + std::to_string(dim) +
                        " exceeds cap " + std::to_string(kDenseEvolutionCap));
  }
}

inline bool is_hermitian(const DenseMatrix& a, double tol = 1e-13) {
  const double scale = std::max(1.0, max_abs_entry(a));
  return max_abs_entry(a - a.adjoint()) <= tol * scale;
}

inline bool is_normal(const DenseMatrix& a, double tol = 1e-12) {
  const double scale = std::max(1.0, max_abs_entry(a));
  return max_abs_entry(a * a.adjoint() - a.adjoint() * a) <= tol * scale * scale;
}

/// exp(i t H) for Hermitian H by eigendecomposition.
inline DenseMatrix exp_i_hermitian(const DenseMatrix& h, double t) {
  check_dense_cap(h.rows());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const auto& vals = es.eigenvalues();
  ComplexVector phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) phases(i) = std::polar(1.0, t * vals(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(A). Normal matrices go through a unitary Schur (= eigen) decomposition,
/// everything else through Pade scaling and squaring.
inline DenseMatrix expm(const DenseMatrix& a) {
  check_dense_cap(a.rows());
  if (a.rows() != a.cols()) throw DimensionError("expm needs a square matrix");
  if (a.size() == 0) return a;
  if (is_normal(a)) {
    Eigen::ComplexSchur<DenseMatrix> schur(a);
    const DenseMatrix& q = schur.matrixU();
    const DenseMatrix& t = schur.matrixT();
    ComplexVector e(t.rows());
    for (Eigen::Index i = 0; i < t.rows(); ++i) e(i) = std::exp(t(i, i));
    return q * e.asDiagonal() * q.adjoint();
  }
  return a.exp();
}

inline ComplexVector evolve_exact(const DenseMatrix& a, const ComplexVector& u0, double T) {
  if (a.rows() != u0.size()) throw DimensionError("evolve_exact: dimension mismatch");
  if (T == 0.0) return u0;
  return expm(T * a) * u0;
}

inline ComplexVector evolve_exact(const SparseOperator& a, const ComplexVector& u0, double T) {
  check_dense_cap(a.rows());
  return evolve_exact(DenseMatrix(a), u0, T);
}

/// r forward Euler steps u <- (I + tau A) u.
inline ComplexVector evolve_euler(const SparseOperator& a, ComplexVector u, double tau,
                                  std::int64_t r) {
  if (a.rows() != u.size()) throw DimensionError("evolve_euler: dimension mismatch");
  if (r < 0) throw DomainError("evolve_euler: negative step count");
  for (std::int64_t i = 0; i < r; ++i) u += tau * (a * u);
  return u;
}

/// Coordinate-triplet dump: row,col,real,imaginary.
inline void write_triplets_csv(const SparseOperator& op, std::ostream& os) {
  os << "row,col,real,imaginary\n";
  os.precision(17);
  for (int k = 0; k < op.outerSize(); ++k) {
    for (SparseOperator::InnerIterator it(op, k); it; ++it) {
      os << it.row() << ',' << it.col() << ',' << it.value().real() << ',' << it.value().imag()
         << '\n';
    }
  }
}

}  // namespace schro
