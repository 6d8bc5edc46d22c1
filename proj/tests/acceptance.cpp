// One PASS/FAIL line per acceptance criterion; exit status is the number of
// failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "schro/schro.hpp"

using namespace schro;

namespace {

constexpr double pi = std::numbers::pi;
const oracle::cplx I1{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion %d: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str(), secs);
  std::fflush(stdout);
  failures += o.pass ? 0 : 1;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

oracle::Mat s_minus(int j, int n) {
  const std::int64_t dim = std::int64_t{1} << n;
  const std::int64_t low = std::int64_t{1} << j;
  oracle::Mat m = oracle::Mat::Zero(dim, dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    if (x % low == low / 2) m(x - 1, x) = 1.0;
  }
  return m;
}

Outcome gate_exactness() {
  double worst = 0.0;
  int checks = 0;
  const double gts[] = {-1.0, -0.5, -0.1, 0.05, 0.3, 0.75, 1.0};
  for (int n = 2; n <= 4; ++n) {
    for (double gt : gts) {
      for (int j = 1; j <= n; ++j) {
        for (double lambda : {0.0, -pi / 2}) {
          const oracle::Mat sm = std::polar(1.0, lambda) * s_minus(j, n);
          const oracle::Mat target = oracle::expi(sm + sm.adjoint(), gt);
          worst = std::max(worst, oracle::norm2(dense_unitary(w_gate(j, gt, lambda, n)) - target));
          ++checks;
        }
      }
      oracle::Mat c = oracle::Mat::Zero(std::int64_t{1} << n, std::int64_t{1} << n);
      c(0, c.cols() - 1) = 1.0;
      const oracle::Mat t1 = oracle::expi(c + c.adjoint(), gt);
      const oracle::Mat t2 = oracle::expi(I1 * c - I1 * c.adjoint(), gt);
      worst = std::max(worst, oracle::norm2(dense_unitary(u_wrap(WrapVariant::One, gt, 1.0, n)) - t1));
      worst = std::max(worst, oracle::norm2(dense_unitary(u_wrap(WrapVariant::Two, gt, 1.0, n)) - t2));
      checks += 2;
    }
  }
  return {worst <= 1e-10, std::to_string(checks) + " unitaries, worst " + fmt("%.2e", worst)};
}

std::string sweep_detail(const SweepResult& s, const char* step_name) {
  int pass = 0, total = 0;
  double worst_ratio = 0.0;
  for (const auto& b : s.bounds) {
    if (b.name != step_name) continue;
    ++total;
    pass += b.pass;
    worst_ratio = std::max(worst_ratio, b.measured / b.formula);
  }
  double lo = 1e9, hi = -1e9;
  int fitted = 0, skipped = 0;
  for (const auto& sl : s.slopes) {
    if (!sl.slope) {
      ++skipped;
      continue;
    }
    ++fitted;
    lo = std::min(lo, *sl.slope);
    hi = std::max(hi, *sl.slope);
  }
  std::string out = std::to_string(pass) + "/" + std::to_string(total) + " step bounds, max error/bound " +
                    fmt("%.3f", worst_ratio) + ", " + std::to_string(fitted) + " slopes in [" + fmt("%.3f", lo) +
                    ", " + fmt("%.3f", hi) + "]";
  if (skipped) out += ", " + std::to_string(skipped) + " exact (no slope)";
  return out;
}

Outcome heat_bound() {
  const SweepResult s = heat_trotter_sweep();
  return {s.pass(), sweep_detail(s, "heat_step")};
}

Outcome adv_bound() {
  const SweepResult s = adv_trotter_sweep();
  int statement_pass = 0, statement_total = 0;
  for (const auto& b : s.bounds) {
    if (b.name != "adv_step_statement") continue;
    ++statement_total;
    statement_pass += b.pass;
  }
  return {s.pass(), sweep_detail(s, "adv_step") + "; statement-form constant holds on " +
                        std::to_string(statement_pass) + "/" + std::to_string(statement_total)};
}

Outcome commutators() {
  int pass = 0, total = 0;
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    for (const auto& r : commutator_suite(n)) {
      ++total;
      pass += r.pass;
      if (r.kind == CheckKind::Equality) worst = std::max(worst, std::abs(r.margin));
    }
  }
  return {pass == total, std::to_string(pass) + "/" + std::to_string(total) + " checks, worst equality gap " +
                             fmt("%.1e", worst)};
}

Outcome gate_counts() {
  bool ok = cnot_equivalent(CnotFormula::V0, 3) == 16 && cnot_equivalent(CnotFormula::ControlledV0, 3) == 88 &&
            cnot_equivalent(CnotFormula::V1, 3) == 28 && cnot_equivalent(CnotFormula::ControlledV1, 3) == 108;
  std::string detail = ok ? "Q_V0/Q_cV0/Q_V1/Q_cV1 = 16/88/28/108" : "single-block formula mismatch";
  const auto reports = counts_suite();
  int pass = 0;
  for (const auto& r : reports) pass += r.pass;
  ok = ok && pass == static_cast<int>(reports.size());
  detail += ", " + std::to_string(pass) + "/" + std::to_string(reports.size()) + " structural/composite checks";
  return {ok, detail};
}

ExperimentConfig heat_config() {
  ExperimentConfig c;
  c.equation = Equation::Heat;
  c.d = 1;
  c.n_x = 3;
  c.a = 1.0;
  c.L = 1.0;
  c.T = 0.05;
  c.R = 3.0;
  c.n_p = 7;
  c.epsilon = 0.01;
  return c;
}

std::string result_detail(const nlohmann::json& rep) {
  const auto& r = rep.at("result");
  return "fidelity " + fmt("%.5f", r.at("fidelity").get<double>()) + ", r=" +
         std::to_string(r.at("r").get<std::int64_t>()) + ", probability/predicted " +
         fmt("%.4f", r.at("probability").get<double>() / r.at("predicted_probability").get<double>());
}

Outcome heat_solve() {
  const SolveOutcome o = run_solve(heat_config());
  const auto& r = o.report.at("result");
  const double fid = r.at("fidelity").get<double>();
  const double ratio = r.at("probability").get<double>() / r.at("predicted_probability").get<double>();
  return {fid >= 0.99 && std::abs(ratio - 1.0) <= 0.05, result_detail(o.report)};
}

Outcome adv_solve() {
  ExperimentConfig c = heat_config();
  c.equation = Equation::Advection;
  c.a_vec = {1.0};
  c.T = 0.1;
  c.profile.name = "step";
  const SolveOutcome one = run_solve(c);
  c.d = 2;
  c.n_x = 2;
  c.a_vec = {1.0, -1.0};
  const SolveOutcome two = run_solve(c);
  const double f1 = one.report.at("result").at("fidelity").get<double>();
  const double f2 = two.report.at("result").at("fidelity").get<double>();
  return {f1 >= 0.98 && f2 >= 0.98, "d=1: " + result_detail(one.report) + "; d=2: " + result_detail(two.report)};
}

Outcome warp_convergence() {
  std::string detail;
  bool ok = true;
  for (Equation eq : {Equation::Heat, Equation::Advection}) {
    ExperimentConfig c = heat_config();
    c.equation = eq;
    c.evolution = Evolution::Exact;
    if (eq == Equation::Advection) {
      c.T = 0.1;
      c.profile.name = "step";
    }
    double prev = 1e300;
    detail += std::string(equation_name(eq)) + " errors";
    for (int np : {5, 6, 7}) {
      c.n_p = np;
      const double e = run_solve(c).report.at("result").at("relative_error").get<double>();
      ok = ok && e < prev;
      prev = e;
      detail += " " + fmt("%.3e", e);
    }
    if (eq == Equation::Heat) detail += "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  criterion(1, "gate identities W_j, U1, U2 exact to 1e-10", gate_exactness);
  criterion(2, "heat Trotter step bound and second-order slope", heat_bound);
  criterion(3, "advection Trotter step bound (proof-form constant)", adv_bound);
  criterion(4, "closed-form commutator norms for n_x = 2..5", commutators);
  criterion(5, "CNOT-equivalent formulas and native gate structure", gate_counts);
  criterion(6, "end-to-end heat solve", heat_solve);
  criterion(7, "end-to-end advection solves", adv_solve);
  criterion(8, "warp error decreases over n_p = 5, 6, 7", warp_convergence);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
