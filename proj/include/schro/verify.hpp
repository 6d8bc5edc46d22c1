#pragma once

// Bound checks, commutator-norm identities, structural gate audits and
// second-order scaling studies.

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "schro/advection.hpp"
#include "schro/bounds.hpp"
#include "schro/heat.hpp"

namespace schro {

enum class CheckKind {
  UpperBound,  // measured <= formula (1 + 1e-9)
  Equality,    // |measured - formula| <= tolerance
};

struct BoundReport {
  std::string name;
  std::string params;
  CheckKind kind = CheckKind::UpperBound;
  double formula = 0.0;
  double measured = 0.0;
  bool pass = false;
  double margin = 0.0;  // formula - measured
};

inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kEqualityTol = 1e-10;

inline BoundReport make_bound(std::string name, std::string params, double formula, double measured) {
  BoundReport r{std::move(name), std::move(params), CheckKind::UpperBound, formula, measured};
  r.pass = measured <= formula * (1.0 + kBoundSlack);
  r.margin = formula - measured;
  return r;
}

inline BoundReport make_equality(std::string name, std::string params, double expected,
                                 double measured, double tol = kEqualityTol) {
  BoundReport r{std::move(name), std::move(params), CheckKind::Equality, expected, measured};
  r.pass = std::abs(measured - expected) <= tol;
  r.margin = expected - measured;
  return r;
}

inline bool all_pass(const std::vector<BoundReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

namespace detail {

inline std::string fmt_params(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

inline std::string fmt_vec(const std::vector<double>& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------- norms

/// ||[A, B]||. Uses a Hermitian eigen-solve when i[A,B] or [A,B] is
/// Hermitian (always the case below), otherwise a full SVD.
inline double commutator_norm(const DenseMatrix& a, const DenseMatrix& b) {
  const DenseMatrix c = a * b - b * a;
  const DenseMatrix ic = cplx(0.0, 1.0) * c;
  const double scale = std::max(1.0, max_abs_entry(c));
  const DenseMatrix* herm = nullptr;
  if (is_hermitian(ic, 1e-13 * scale)) herm = &ic;
  else if (is_hermitian(c, 1e-13 * scale)) herm = &c;
  if (herm != nullptr) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(*herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return spectral_norm(c);
}

/// ||[A, B]|| for operators block-diagonal over p blocks of size `block`.
/// Off-block entries are checked to be zero.
inline double blockwise_commutator_norm(const SparseOperator& a, const SparseOperator& b,
                                        Eigen::Index block) {
  const SparseOperator c = a * b - b * a;
  for (int col = 0; col < c.outerSize(); ++col) {
    for (SparseOperator::InnerIterator it(c, col); it; ++it) {
      if (it.row() / block != it.col() / block && std::abs(it.value()) > 1e-14) {
        throw Error("commutator is not block diagonal");
      }
    }
  }
  double best = 0.0;
  const DenseMatrix da(a);
  const DenseMatrix db(b);
  for (Eigen::Index k = 0; k * block < a.rows(); ++k) {
    const DenseMatrix ab = da.block(k * block, k * block, block, block);
    const DenseMatrix bb = db.block(k * block, k * block, block, block);
    best = std::max(best, commutator_norm(ab, bb));
  }
  return best;
}

// ---------------------------------------------------------- commutators

struct CommutatorParams {
  double gamma1 = 0.5;
  double gamma2 = 1.0;
  int n_p = 2;
  std::vector<double> a_vec{1.0, -1.0};
};

/// Closed-form commutator norms of the advection building blocks at n_x.
inline std::vector<BoundReport> commutator_suite(int n_x, const CommutatorParams& cp = {}) {
  if (n_x < 2) throw DomainError("commutator suite needs n_x >= 2");
  const Eigen::Index n = Eigen::Index{1} << n_x;
  const std::string ps = "n_x=" + std::to_string(n_x);
  const DenseMatrix s01(tensor_power(sigma01(), n_x));
  const DenseMatrix s10(tensor_power(sigma10(), n_x));

  std::vector<DenseMatrix> plus(n_x);
  std::vector<DenseMatrix> minus(n_x);
  DenseMatrix sum_plus = DenseMatrix::Zero(n, n);
  DenseMatrix sum_minus = DenseMatrix::Zero(n, n);
  for (int j = 1; j <= n_x; ++j) {
    const DenseMatrix sm(s_minus_term(j, n_x));
    const DenseMatrix sp(s_plus_term(j, n_x));
    plus[j - 1] = sm + sp;
    minus[j - 1] = sm - sp;
    sum_plus += plus[j - 1];
    sum_minus += minus[j - 1];
  }

  std::vector<BoundReport> out;
  out.push_back(make_equality("comm_splus_sigma_plus", ps, 1.0, commutator_norm(sum_plus, s01 + s10)));
  out.push_back(make_equality("comm_sminus_sigma_minus", ps, 1.0, commutator_norm(sum_minus, s01 - s10)));

  double pair_plus = 0.0;
  double pair_minus = 0.0;
  for (int j = 0; j < n_x; ++j) {
    for (int jj = j + 1; jj < n_x; ++jj) {
      pair_plus += commutator_norm(plus[j], plus[jj]);
      pair_minus += commutator_norm(minus[j], minus[jj]);
    }
  }
  out.push_back(make_equality("pairwise_plus_sum", ps, n_x - 1.0, pair_plus));
  out.push_back(make_equality("pairwise_minus_sum", ps, n_x - 1.0, pair_minus));

  double sj_sigma = 0.0;
  for (int j = 1; j <= n_x; ++j) {
    const DenseMatrix sm(s_minus_term(j, n_x));
    sj_sigma = std::max(sj_sigma, max_abs_entry(sm * s01 - s01 * sm));
  }
  out.push_back(make_equality("sminus_sigma01_vanish", ps, 0.0, sj_sigma));

  const DenseMatrix h1(h1_operator(cp.gamma1, n_x));
  const DenseMatrix h2(h2_operator(cp.gamma2, n_x));
  out.push_back(make_bound("comm_h1_h2",
                           ps + " " + detail::fmt_params({{"g1", cp.gamma1}, {"g2", cp.gamma2}}),
                           2.0 * cp.gamma1 * cp.gamma2 * n_x, commutator_norm(h1, h2)));

  // Dissipative and dispersive halves of H_adv, assembled over the full register.
  const int d = static_cast<int>(cp.a_vec.size());
  const GridSpec grid{d, n_x, 1.0, Boundary::Periodic};
  const SparseOperator sh1 = h1_operator(cp.gamma1, n_x);
  const SparseOperator sh2 = h2_operator(cp.gamma2, n_x);
  SparseOperator diss(grid.total_points(), grid.total_points());
  SparseOperator disp(grid.total_points(), grid.total_points());
  for (int alpha = 1; alpha <= d; ++alpha) {
    const double a = cp.a_vec[alpha - 1];
    diss += std::abs(a) * kron_place(sh1, alpha, grid);
    disp += a * kron_place(sh2, alpha, grid);
  }
  const SparseOperator ip = identity_op(std::int64_t{1} << cp.n_p);
  const double measured = blockwise_commutator_norm(kron(centered_index_diag(cp.n_p), diss),
                                                    kron(ip, disp), grid.total_points());
  const double np = static_cast<double>(std::int64_t{1} << cp.n_p);
  out.push_back(make_bound(
      "comm_hadv_split",
      ps + " " + detail::fmt_params({{"n_p", double(cp.n_p)}, {"g1", cp.gamma1}, {"g2", cp.gamma2}}) +
          " a=" + detail::fmt_vec(cp.a_vec),
      np * cp.gamma1 * cp.gamma2 * n_x * sum_of_squares(cp.a_vec), measured));
  return out;
}

// -------------------------------------------------------- trotter sweeps

inline double heat_trotter_error(int d, int n_x, int n_p, double tau, double gamma0) {
  const RegisterLayout layout{d, n_x, n_p};
  const DenseMatrix exact = exp_i_hermitian(h_heat_dense(gamma0, layout), tau);
  return operator_norm_diff(exact, dense_unitary(v_heat(tau, gamma0, layout)));
}

inline double adv_trotter_error(const std::vector<double>& a_vec, int n_x, int n_p, double tau,
                                double gamma1, double gamma2) {
  const RegisterLayout layout{static_cast<int>(a_vec.size()), n_x, n_p};
  const DenseMatrix exact = exp_i_hermitian(h_adv_dense(gamma1, gamma2, a_vec, layout), tau);
  return operator_norm_diff(exact, dense_unitary(v_adv(tau, gamma1, gamma2, a_vec, layout)));
}

/// U_*(tau) = exp(i tau H_disp) exp(i tau H_diss): the exact split of U_adv.
inline DenseMatrix adv_split_unitary(const std::vector<double>& a_vec, int n_x, int n_p, double tau,
                                     double gamma1, double gamma2) {
  const RegisterLayout layout{static_cast<int>(a_vec.size()), n_x, n_p};
  const DenseMatrix diss = h_adv_dense(gamma1, 0.0, a_vec, layout);
  const DenseMatrix disp = h_adv_dense(gamma1, gamma2, a_vec, layout) - diss;
  return exp_i_hermitian(disp, tau) * exp_i_hermitian(diss, tau);
}

struct ScalingResult {
  std::vector<double> taus;
  std::vector<double> errors;
  std::optional<double> slope;  // empty when errors sit at the round-off floor
};

inline constexpr double kScalingFloor = 1e-11;

/// Least-squares slope of log(error) against log(tau).
inline std::optional<double> loglog_slope(const std::vector<double>& taus,
                                          const std::vector<double>& errors) {
  if (taus.size() != errors.size() || taus.size() < 2) throw DomainError("need >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (errors[i] < kScalingFloor) return std::nullopt;
    const double x = std::log(taus[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(taus.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline ScalingResult scaling_study(const std::function<Circuit(double)>& builder,
                                   const std::function<DenseMatrix(double)>& oracle,
                                   const std::vector<double>& taus) {
  ScalingResult res;
  res.taus = taus;
  for (double t : taus) {
    res.errors.push_back(operator_norm_diff(dense_unitary(builder(t)), oracle(t)));
  }
  res.slope = loglog_slope(res.taus, res.errors);
  return res;
}

struct SlopeReport {
  std::string name;
  std::string params;
  std::optional<double> slope;
  bool pass = false;
};

inline SlopeReport make_slope(std::string name, std::string params, std::optional<double> slope,
                              double target = 2.0, double tol = 0.2) {
  SlopeReport r{std::move(name), std::move(params), slope, false};
  r.pass = !slope || std::abs(*slope - target) <= tol;
  return r;
}

struct SweepResult {
  std::vector<BoundReport> bounds;
  std::vector<SlopeReport> slopes;

  bool pass() const {
    if (!all_pass(bounds)) return false;
    for (const auto& s : slopes) {
      if (!s.pass) return false;
    }
    return true;
  }
};

struct HeatSweep {
  std::vector<int> d{1, 2};
  std::vector<int> n_x{2, 3};
  std::vector<int> n_p{2, 3};
  std::vector<double> tau{0.02, 0.05, 0.1};
  double gamma0 = 1.0;
};

inline SweepResult heat_trotter_sweep(const HeatSweep& s = {}) {
  SweepResult out;
  for (int d : s.d) {
    for (int nx : s.n_x) {
      for (int np : s.n_p) {
        std::vector<double> errs;
        const std::string base = detail::fmt_params(
            {{"d", double(d)}, {"n_x", double(nx)}, {"n_p", double(np)}, {"g0", s.gamma0}});
        for (double tau : s.tau) {
          const double e = heat_trotter_error(d, nx, np, tau, s.gamma0);
          errs.push_back(e);
          const double bound = heat_step_bound(d, std::int64_t{1} << np, s.gamma0, tau, nx);
          out.bounds.push_back(make_bound("heat_step", base + " " + detail::fmt_params({{"tau", tau}}), bound, e));
        }
        out.slopes.push_back(make_slope("heat_step_slope", base, loglog_slope(s.tau, errs)));
      }
    }
  }
  for (int nx : s.n_x) {
    for (double tau : s.tau) {
      const DenseMatrix exact = exp_i_hermitian(DenseMatrix(h0_operator(s.gamma0, nx)), tau);
      const double e = operator_norm_diff(exact, dense_unitary(v0(tau, s.gamma0, nx)));
      out.bounds.push_back(make_bound("v0_step",
                                      detail::fmt_params({{"n_x", double(nx)}, {"g0", s.gamma0}, {"tau", tau}}),
                                      v0_step_bound(s.gamma0, tau, nx), e));
    }
  }
  return out;
}

struct AdvSweep {
  std::vector<std::vector<double>> a_vecs{{1.0}, {-1.0}, {2.0}, {1.0, -1.0}, {-0.5, 1.0}};
  std::vector<int> n_x{2, 3};
  std::vector<int> n_p{2, 3};
  std::vector<double> tau{0.02, 0.05, 0.1};
  double gamma1 = 0.5;
  double gamma2 = 1.0;
};

/// Records both constants of the per-step advection bound. Only the
/// proof-form bound decides the pass flag of "adv_step"; the statement form
/// is reported as "adv_step_statement".
inline SweepResult adv_trotter_sweep(const AdvSweep& s = {}) {
  SweepResult out;
  for (const auto& a : s.a_vecs) {
    for (int nx : s.n_x) {
      for (int np : s.n_p) {
        const std::int64_t big_n = std::int64_t{1} << np;
        std::vector<double> errs;
        const std::string base =
            detail::fmt_params({{"n_x", double(nx)}, {"n_p", double(np)}, {"g1", s.gamma1}, {"g2", s.gamma2}}) +
            " a=" + detail::fmt_vec(a);
        const RegisterLayout layout{static_cast<int>(a.size()), nx, np};
        for (double tau : s.tau) {
          const std::string ps = base + " " + detail::fmt_params({{"tau", tau}});
          const DenseMatrix exact = exp_i_hermitian(h_adv_dense(s.gamma1, s.gamma2, a, layout), tau);
          const double e =
              operator_norm_diff(exact, dense_unitary(v_adv(tau, s.gamma1, s.gamma2, a, layout)));
          errs.push_back(e);
          out.bounds.push_back(
              make_bound("adv_step", ps, adv_step_bound(big_n, s.gamma1, s.gamma2, tau, nx, a), e));
          out.bounds.push_back(make_bound("adv_step_statement", ps,
                                          adv_step_bound_statement(big_n, s.gamma1, s.gamma2, tau, nx, a), e));
          const double split =
              operator_norm_diff(exact, adv_split_unitary(a, nx, np, tau, s.gamma1, s.gamma2));
          out.bounds.push_back(
              make_bound("adv_split", ps, adv_split_bound(big_n, s.gamma1, s.gamma2, tau, nx, a), split));
        }
        out.slopes.push_back(make_slope("adv_step_slope", base, loglog_slope(s.tau, errs)));
      }
    }
  }
  for (int nx : s.n_x) {
    for (double tau : s.tau) {
      const std::string ps = detail::fmt_params({{"n_x", double(nx)}, {"tau", tau}});
      const DenseMatrix e1 = exp_i_hermitian(DenseMatrix(h1_operator(s.gamma1, nx)), tau);
      const DenseMatrix e2 = exp_i_hermitian(DenseMatrix(h2_operator(s.gamma2, nx)), tau);
      out.bounds.push_back(make_bound("v1_step", ps, v12_step_bound(s.gamma1, tau, nx),
                                      operator_norm_diff(e1, dense_unitary(v1(tau, s.gamma1, nx)))));
      out.bounds.push_back(make_bound("v2_step", ps, v12_step_bound(s.gamma2, tau, nx),
                                      operator_norm_diff(e2, dense_unitary(v2(tau, s.gamma2, nx)))));
    }
  }
  return out;
}

// -------------------------------------------------------- gate audits

namespace detail {

// Expected MCRZ tally of one W_j product (j-1 controls per W_j) with
// `extra` controls added to each.
inline std::map<int, std::int64_t> w_product_mcrz(int n_x, int extra, std::int64_t copies) {
  std::map<int, std::int64_t> m;
  for (int j = 1; j <= n_x; ++j) m[j - 1 + extra] += copies;
  return m;
}

inline double map_mismatch(const std::map<int, std::int64_t>& a, const std::map<int, std::int64_t>& b) {
  return a == b ? 0.0 : 1.0;
}

}  // namespace detail

/// Structural gate audits plus the closed-form CNOT-equivalent values.
inline std::vector<BoundReport> counts_suite(const std::vector<int>& n_xs = {2, 3, 4, 5},
                                             const std::vector<int>& n_ps = {2, 3},
                                             const std::vector<int>& ds = {1, 2}) {
  std::vector<BoundReport> out;
  for (int nx : n_xs) {
    const std::string ps = "n_x=" + std::to_string(nx);
    for (int j = 1; j <= nx; ++j) {
      const GateCounts w = count_native(w_gate(j, 0.1, 0.0, nx));
      const std::string pj = ps + " j=" + std::to_string(j);
      out.push_back(make_equality("w_mcrz", pj, 1.0, double(w.mcrz_total())));
      out.push_back(make_equality("w_mcrz_controls", pj, double(j - 1),
                                  double(w.mcrz_by_controls.begin()->first)));
      out.push_back(make_equality("w_cnot_ladder", pj, 2.0 * (j - 1), double(w.cnot)));
    }
    const GateCounts c0 = count_native(v0(0.1, 1.0, nx));
    out.push_back(make_equality("v0_mcrz", ps, double(nx), double(c0.mcrz_total())));
    out.push_back(make_equality("v0_mcrz_profile", ps, 0.0,
                                detail::map_mismatch(c0.mcrz_by_controls, detail::w_product_mcrz(nx, 0, 1))));
    out.push_back(make_equality("v0_cnot", ps, double(nx * (nx - 1)), double(c0.cnot)));

    // V1: n_x W_j plus one (n_x-1)-controlled RZ for the wrap term.
    const GateCounts c1 = count_native(v1(0.1, 1.0, nx));
    auto m1 = detail::w_product_mcrz(nx, 0, 1);
    m1[nx - 1] += 1;
    out.push_back(make_equality("v1_mcrz_profile", ps, 0.0, detail::map_mismatch(c1.mcrz_by_controls, m1)));
    const GateCounts c2 = count_native(v2(0.1, 1.0, nx));
    out.push_back(make_equality("v2_mcrz_profile", ps, 0.0, detail::map_mismatch(c2.mcrz_by_controls, m1)));

    for (int d : ds) {
      for (int np : n_ps) {
        const std::string pl = ps + " n_p=" + std::to_string(np) + " d=" + std::to_string(d);
        const RegisterLayout layout{d, nx, np};
        const std::int64_t lifted = (std::int64_t{1} << np) - 1;
        const std::int64_t half = std::int64_t{1} << (np - 1);
        auto heat_expect = detail::w_product_mcrz(nx, 1, d * lifted);
        for (const auto& [k, v] : detail::w_product_mcrz(nx, 0, d * half)) heat_expect[k] += v;
        const GateCounts ch = count_native(v_heat(0.1, 1.0, layout));
        out.push_back(make_equality("v_heat_mcrz_profile", pl, 0.0,
                                    detail::map_mismatch(ch.mcrz_by_controls, heat_expect)));

        std::vector<double> a(static_cast<std::size_t>(d), 1.0);
        if (d > 1) a[1] = -1.0;
        auto adv_expect = detail::w_product_mcrz(nx, 1, d * lifted);
        adv_expect[nx] += d * lifted;
        for (const auto& [k, v] : detail::w_product_mcrz(nx, 0, d * (half + 1))) adv_expect[k] += v;
        adv_expect[nx - 1] += d * (half + 1);
        const GateCounts ca = count_native(v_adv(0.1, 0.5, 1.0, a, layout));
        out.push_back(make_equality("v_adv_mcrz_profile", pl, 0.0,
                                    detail::map_mismatch(ca.mcrz_by_controls, adv_expect)));

        if (nx >= 3) {
          const std::int64_t qh = cnot_equivalent(CnotFormula::V0, nx) * d * half +
                                  cnot_equivalent(CnotFormula::ControlledV0, nx) * d * lifted;
          out.push_back(make_equality("q_vheat_composition", pl, double(qh),
                                      double(cnot_equivalent(CnotFormula::VHeat, nx, np, d))));
          const std::int64_t qa = cnot_equivalent(CnotFormula::V2, nx) * d +
                                  cnot_equivalent(CnotFormula::V1, nx) * d * half +
                                  cnot_equivalent(CnotFormula::ControlledV1, nx) * d * lifted;
          out.push_back(make_equality("q_vadv_composition", pl, double(qa),
                                      double(cnot_equivalent(CnotFormula::VAdv, nx, np, d))));
        }
      }
    }
  }
  return out;
}

}  // namespace schro
