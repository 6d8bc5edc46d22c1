#pragma once

// Closed-form Trotter error bounds, step budgets and asymptotic cost
// formulas for the heat and advection circuits.

#include <cmath>
#include <cstdint>
#include <vector>

#include "schro/errors.hpp"

namespace schro {

inline double sum_of_squares(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

/// Per-step heat bound ||U_heat(tau) - V_heat(tau)|| <= d N_p g0^2 tau^2 (n_x - 1) / 4.
inline double heat_step_bound(int d, std::int64_t n_points_p, double gamma0, double tau, int n_x) {
  return static_cast<double>(d) * static_cast<double>(n_points_p) * gamma0 * gamma0 * tau * tau *
         static_cast<double>(n_x - 1) / 4.0;
}

/// ||U_0(tau) - V_0(tau)|| <= g0^2 tau^2 (n_x - 1) / 2.
inline double v0_step_bound(double gamma0, double tau, int n_x) {
  return gamma0 * gamma0 * tau * tau * static_cast<double>(n_x - 1) / 2.0;
}

/// ||U_{1,2}(tau) - V_{1,2}(tau)|| <= g^2 tau^2 n_x / 2.
inline double v12_step_bound(double gamma, double tau, int n_x) {
  return gamma * gamma * tau * tau * static_cast<double>(n_x) / 2.0;
}

/// Per-step advection bound: tau^2 n_x^2 (N_p g1^2 + 2 N_p g1 g2 + 2 g2^2) / 4 * sum a^2.
inline double adv_step_bound(std::int64_t n_points_p, double gamma1, double gamma2, double tau,
                             int n_x, const std::vector<double>& a_vec) {
  const double np = static_cast<double>(n_points_p);
  return tau * tau * n_x * n_x *
         (np * gamma1 * gamma1 + 2.0 * np * gamma1 * gamma2 + 2.0 * gamma2 * gamma2) / 4.0 *
         sum_of_squares(a_vec);
}

/// Variant with g1 and g2 exchanged: (N_p g2^2 + 2 N_p g1 g2 + 2 g1^2).
inline double adv_step_bound_statement(std::int64_t n_points_p, double gamma1, double gamma2,
                                       double tau, int n_x, const std::vector<double>& a_vec) {
  return adv_step_bound(n_points_p, gamma2, gamma1, tau, n_x, a_vec);
}

/// First-level split ||U_adv(tau) - U_*(tau)|| <= tau^2 N_p g1 g2 n_x sum a^2 / 2.
inline double adv_split_bound(std::int64_t n_points_p, double gamma1, double gamma2, double tau,
                              int n_x, const std::vector<double>& a_vec) {
  return tau * tau * static_cast<double>(n_points_p) * gamma1 * gamma2 * n_x *
         sum_of_squares(a_vec) / 2.0;
}

namespace detail {
// Ceiling that ignores round-off just above an integer.
inline std::int64_t ceil_budget(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<std::int64_t>(std::ceil(x * (1.0 - 1e-12)));
}
}  // namespace detail

inline std::int64_t r_budget_heat(int d, std::int64_t n_points_p, double gamma0, double T, int n_x,
                                  double eps) {
  if (!(eps > 0.0)) throw DomainError("epsilon must be > 0");
  return detail::ceil_budget(heat_step_bound(d, n_points_p, gamma0, T, n_x) / eps);
}

inline std::int64_t r_budget_adv(std::int64_t n_points_p, double gamma1, double gamma2, double T,
                                 int n_x, const std::vector<double>& a_vec, double eps) {
  if (!(eps > 0.0)) throw DomainError("epsilon must be > 0");
  return detail::ceil_budget(adv_step_bound(n_points_p, gamma1, gamma2, T, n_x, a_vec) / eps);
}

/// Leading single-qubit gate count of V_heat: d 2^{n_p-1} (2 n_x + 1).
inline std::int64_t heat_single_qubit_formula(int d, int n_x, int n_p) {
  return static_cast<std::int64_t>(d) * (std::int64_t{1} << (n_p - 1)) * (2 * n_x + 1);
}

/// d (4 n_x + 2 + 2 + 2(n_x - 1)) + d 2^{n_p-1} (2 n_x + 2 + 2(n_x - 1) + 1).
inline std::int64_t adv_single_qubit_formula(int d, int n_x, int n_p) {
  const std::int64_t dd = d;
  return dd * (4 * n_x + 4 + 2 * (n_x - 1)) +
         dd * (std::int64_t{1} << (n_p - 1)) * (2 * n_x + 3 + 2 * (n_x - 1));
}

/// Total heat cost up to constants and logs: d^2 T^2 |u0|^3 / (|u(T)|^3 h^4 eps^3).
inline double heat_total_complexity(int d, double T, double u0_norm, double uT_norm, double h,
                                    double eps) {
  return static_cast<double>(d) * d * T * T * std::pow(u0_norm / uT_norm, 3) /
         (std::pow(h, 4) * std::pow(eps, 3));
}

/// Total advection cost up to constants and logs:
/// d T^2 sum a^2 |u0|^3 / (|u(T)|^3 h^2 eps^3).
inline double adv_total_complexity(const std::vector<double>& a_vec, double T, double u0_norm,
                                   double uT_norm, double h, double eps) {
  return static_cast<double>(a_vec.size()) * T * T * sum_of_squares(a_vec) *
         std::pow(u0_norm / uT_norm, 3) / (h * h * std::pow(eps, 3));
}

}  // namespace schro
