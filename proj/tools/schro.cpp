// schro: command-line front end.
//
//   schro solve  [--config FILE] [overrides...] [--sweep key=v1,v2,...]
//   schro verify --suite trotter|commutators|counts
//   schro export --circuit NAME [circuit args] --format text|json
//   schro count  --circuit NAME [circuit args] [--formula Q_V0 ...]
//
// Exit codes: 0 pass, 1 verification failure, 2 invalid input.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schro/schro.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct SolveFlags {
  std::string config;
  std::optional<std::string> equation;
  std::optional<double> a;
  std::vector<double> a_vec;
  std::optional<double> L, T, R, epsilon;
  std::optional<int> n_x, d, n_p;
  std::optional<std::int64_t> r, k;
  std::optional<std::string> evolution, profile, u0, report, solution;
  std::vector<std::string> sweep;
  unsigned threads = 0;
};

schro::ExperimentConfig build_config(const SolveFlags& f) {
  schro::ExperimentConfig c = f.config.empty() ? schro::ExperimentConfig{} : schro::load_config(f.config);
  if (f.equation) c.equation = schro::parse_equation(*f.equation);
  if (f.a) c.a = *f.a;
  if (!f.a_vec.empty()) c.a_vec = f.a_vec;
  if (f.L) c.L = *f.L;
  if (f.T) c.T = *f.T;
  if (f.R) c.R = *f.R;
  if (f.epsilon) c.epsilon = *f.epsilon;
  if (f.n_x) c.n_x = *f.n_x;
  if (f.d) c.d = *f.d;
  if (f.n_p) c.n_p = *f.n_p;
  if (f.r) c.r = *f.r;
  if (f.k) c.postselect_k = *f.k;
  if (f.evolution) c.evolution = schro::parse_evolution(*f.evolution);
  if (f.profile) c.profile.name = *f.profile;
  if (f.u0) c.u0_csv = *f.u0;
  if (f.report) c.report = *f.report;
  if (f.solution) c.solution = *f.solution;
  // a scalar velocity for d=1 advection when only --a was given
  if (c.equation == schro::Equation::Advection && f.a && f.a_vec.empty() && c.d == 1) c.a_vec = {*f.a};
  schro::validate(c);
  return c;
}

std::string suffixed(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + tag + p.extension().string())).string();
}

// key=v1,v2,... -> one config per value.
std::vector<std::pair<std::string, schro::ExperimentConfig>> expand_sweep(
    const schro::ExperimentConfig& base, const std::vector<std::string>& specs) {
  std::vector<std::pair<std::string, schro::ExperimentConfig>> runs{{"", base}};
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw schro::DomainError("sweep must look like key=v1,v2 (got '" + spec + "')");
    const std::string key = spec.substr(0, eq);
    std::vector<std::string> values;
    std::stringstream ss(spec.substr(eq + 1));
    for (std::string v; std::getline(ss, v, ',');) {
      if (!v.empty()) values.push_back(v);
    }
    if (values.empty()) throw schro::DomainError("sweep '" + key + "' has no values");
    std::vector<std::pair<std::string, schro::ExperimentConfig>> next;
    for (const auto& [tag, cfg] : runs) {
      for (const auto& v : values) {
        schro::ExperimentConfig c = cfg;
        try {
          if (key == "n_p") c.n_p = std::stoi(v);
          else if (key == "n_x") c.n_x = std::stoi(v);
          else if (key == "d") c.d = std::stoi(v);
          else if (key == "r") c.r = std::stoll(v);
          else if (key == "T") c.T = std::stod(v);
          else if (key == "R") c.R = std::stod(v);
          else if (key == "epsilon") c.epsilon = std::stod(v);
          else throw schro::DomainError("cannot sweep over '" + key + "'");
        } catch (const std::logic_error&) {
          throw schro::DomainError("bad sweep value '" + v + "' for " + key);
        }
        schro::validate(c);
        const std::string t = (tag.empty() ? "" : tag + "_") + key + v;
        c.report = suffixed(base.report, t);
        c.solution = suffixed(base.solution, t);
        next.emplace_back(t, c);
      }
    }
    runs = std::move(next);
  }
  return runs;
}

void write_outputs(const schro::ExperimentConfig& c, const schro::SolveOutcome& out) {
  std::ofstream rep(c.report);
  if (!rep) throw schro::DomainError("cannot write report '" + c.report + "'");
  rep << out.report.dump(2) << '\n';
  std::ofstream sol(c.solution);
  if (!sol) throw schro::DomainError("cannot write solution '" + c.solution + "'");
  schro::write_solution_csv(sol, out.grid, out.u_est, out.u_exact);
}

std::string summary_line(const std::string& tag, const schro::SolveOutcome& out) {
  const auto& r = out.report.at("result");
  std::ostringstream os;
  os << (tag.empty() ? "solve" : tag) << ": fidelity=" << r.at("fidelity").get<double>()
     << " relative_error=" << r.at("relative_error").get<double>()
     << " probability=" << r.at("probability").get<double>()
     << " predicted=" << r.at("predicted_probability").get<double>() << " r=" << r.at("r").get<std::int64_t>();
  return os.str();
}

int cmd_solve(const SolveFlags& f) {
  const schro::ExperimentConfig base = build_config(f);
  if (f.sweep.empty()) {
    const schro::SolveOutcome out = schro::run_solve(base);
    write_outputs(base, out);
    std::cout << summary_line("", out) << '\n';
    return kExitPass;
  }
  const auto runs = expand_sweep(base, f.sweep);
  std::vector<std::optional<schro::SolveOutcome>> results(runs.size());
  std::vector<std::string> errors(runs.size());
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<unsigned>(f.threads ? f.threads : hw, static_cast<unsigned>(runs.size()));
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        results[i] = schro::run_solve(runs[i].second);
        write_outputs(runs[i].second, *results[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  int code = kExitPass;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << runs[i].first << ": error: " << errors[i] << '\n';
      code = kExitInvalid;
    } else {
      std::cout << summary_line(runs[i].first, *results[i]) << '\n';
    }
  }
  return code;
}

struct VerifyFlags {
  std::string suite;
  int nx_min = 2;
  int nx_max = 5;
  std::string csv;
  std::string json;
};

int cmd_verify(const VerifyFlags& f) {
  if (f.nx_min < 2 || f.nx_max < f.nx_min) throw schro::DomainError("need 2 <= nx-min <= nx-max");
  std::vector<schro::BoundReport> reports;
  std::vector<schro::SlopeReport> slopes;
  if (f.suite == "commutators") {
    for (int n = f.nx_min; n <= f.nx_max; ++n) {
      auto r = schro::commutator_suite(n);
      reports.insert(reports.end(), r.begin(), r.end());
    }
  } else if (f.suite == "counts") {
    std::vector<int> nxs;
    for (int n = f.nx_min; n <= f.nx_max; ++n) nxs.push_back(n);
    reports = schro::counts_suite(nxs);
  } else if (f.suite == "trotter") {
    for (auto sweep : {schro::heat_trotter_sweep(), schro::adv_trotter_sweep()}) {
      reports.insert(reports.end(), sweep.bounds.begin(), sweep.bounds.end());
      slopes.insert(slopes.end(), sweep.slopes.begin(), sweep.slopes.end());
    }
  } else {
    throw schro::DomainError("suite must be trotter, commutators or counts (got '" + f.suite + "')");
  }

  std::ostringstream csv;
  schro::write_bounds_csv(csv, reports);
  if (!slopes.empty()) {
    csv << '\n';
    schro::write_slopes_csv(csv, slopes);
  }
  if (f.csv.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(f.csv);
    if (!out) throw schro::DomainError("cannot write '" + f.csv + "'");
    out << csv.str();
  }
  if (!f.json.empty()) {
    nlohmann::json j{{"suite", f.suite}, {"bounds", nlohmann::json::array()}, {"slopes", nlohmann::json::array()}};
    for (const auto& r : reports) j["bounds"].push_back(schro::to_json(r));
    for (const auto& s : slopes) j["slopes"].push_back(schro::to_json(s));
    std::ofstream out(f.json);
    if (!out) throw schro::DomainError("cannot write '" + f.json + "'");
    out << j.dump(2) << '\n';
  }

  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.name << " [" << r.params << "] formula=" << r.formula
                << " measured=" << r.measured << '\n';
    }
  }
  for (const auto& s : slopes) {
    if (!s.pass) {
      ++failed;
      std::cerr << "FAIL " << s.name << " [" << s.params << "] slope=" << *s.slope << '\n';
    }
  }
  std::cerr << f.suite << ": " << reports.size() + slopes.size() - failed << '/'
            << reports.size() + slopes.size() << " checks pass\n";
  return failed == 0 ? kExitPass : kExitFail;
}

struct CircuitFlags {
  std::string circuit;
  schro::CircuitArgs args;
  std::string config;
  std::string format = "text";
  std::string output;
  std::vector<std::string> formulas;
};

// Circuit from explicit arguments, or v_heat/v_adv from a solve config.
schro::Circuit select_circuit(const CircuitFlags& f) {
  if (!f.config.empty()) {
    const schro::ExperimentConfig c = schro::load_config(f.config);
    schro::validate(c);
    if (c.equation == schro::Equation::Heat) return schro::v_heat(schro::heat_problem(c));
    return schro::v_adv(schro::advection_problem(c));
  }
  if (f.circuit.empty()) throw schro::DomainError("--circuit or --config is required");
  return schro::build_named_circuit(f.circuit, f.args);
}

int cmd_export(const CircuitFlags& f) {
  const schro::Circuit c = select_circuit(f);
  std::string text;
  if (f.format == "text") text = schro::to_text(c);
  else if (f.format == "json") text = schro::to_json(c).dump(2) + "\n";
  else throw schro::DomainError("format must be text or json (got '" + f.format + "')");
  if (f.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(f.output);
    if (!out) throw schro::DomainError("cannot write '" + f.output + "'");
    out << text;
  }
  return kExitPass;
}

int cmd_count(const CircuitFlags& f) {
  nlohmann::json j;
  if (!f.circuit.empty() || !f.config.empty()) {
    const schro::Circuit c = select_circuit(f);
    j["circuit"] = c.label();
    j["qubits"] = c.n_qubits();
    j["gates"] = c.size();
    j["native"] = schro::to_json(schro::count_native(c));
  }
  for (const auto& name : f.formulas) {
    j["cnot_equivalent"][name] =
        schro::cnot_equivalent(schro::parse_formula(name), f.args.n_x, f.args.n_p, f.args.d);
  }
  if (j.is_null()) throw schro::DomainError("count needs --circuit, --config or --formula");
  std::cout << j.dump(2) << '\n';
  return kExitPass;
}

void add_circuit_options(CLI::App* sub, CircuitFlags& f) {
  sub->add_option("--circuit", f.circuit, "w b b1 b2 u1 u2 v0 v1 v2 v0_tilde v1_tilde v2_tilde v_heat v_adv qft dft");
  sub->add_option("--config", f.config, "build V_heat or V_adv from a solve config");
  sub->add_option("--n-x", f.args.n_x, "qubits per dimension")->capture_default_str();
  sub->add_option("--j", f.args.j, "W_j / B_j index")->capture_default_str();
  sub->add_option("--lambda", f.args.lambda, "phase lambda")->capture_default_str();
  sub->add_option("--tau", f.args.tau, "time step")->capture_default_str();
  sub->add_option("--gamma", f.args.gamma, "g0 (heat) or g1 (advection)")->capture_default_str();
  sub->add_option("--gamma2", f.args.gamma2, "g2 (advection)")->capture_default_str();
  sub->add_option("--d", f.args.d, "dimensions")->capture_default_str();
  sub->add_option("--n-p", f.args.n_p, "p-register qubits")->capture_default_str();
  sub->add_option("--R", f.args.R, "p-domain half width / pi")->capture_default_str();
  sub->add_option("--a-vec", f.args.a_vec, "velocities");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schrodingerisation circuits: build, simulate, verify"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "run a heat or advection experiment");
  solve->add_option("--config", sf.config, "JSON config; flags override its fields");
  solve->add_option("--equation", sf.equation, "heat | advection (default heat)");
  solve->add_option("--a", sf.a, "diffusivity (heat) or velocity for d=1 advection (default 1)");
  solve->add_option("--a-vec", sf.a_vec, "advection velocities, one per dimension");
  solve->add_option("--L", sf.L, "domain length (default 1)");
  solve->add_option("--T", sf.T, "final time (default 0.05)");
  solve->add_option("--n-x", sf.n_x, "qubits per dimension (default 3)");
  solve->add_option("--d", sf.d, "dimensions (default 1)");
  solve->add_option("--n-p", sf.n_p, "p-register qubits (default 7)");
  solve->add_option("--R", sf.R, "p domain is [-pi R, pi R) (default 3)");
  solve->add_option("--epsilon", sf.epsilon, "Trotter tolerance for the r budget (default 0.01)");
  solve->add_option("--r", sf.r, "step count; overrides the budget");
  solve->add_option("--k", sf.k, "post-selection index (default: smallest k with p_k > 0)");
  solve->add_option("--evolution", sf.evolution, "circuit | exact (default circuit)");
  solve->add_option("--profile", sf.profile, "sine | gaussian | step | constant (default sine)");
  solve->add_option("--u0", sf.u0, "CSV with one value (re or re,im) per grid point");
  solve->add_option("--report", sf.report, "JSON report path (default report.json)");
  solve->add_option("--solution", sf.solution, "CSV solution path (default solution.csv)");
  solve->add_option("--sweep", sf.sweep, "key=v1,v2,... over n_p n_x d r T R epsilon; repeatable");
  solve->add_option("--threads", sf.threads, "worker threads for --sweep (default: all cores)");

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", vf.suite, "trotter | commutators | counts")->required();
  verify->add_option("--nx-min", vf.nx_min, "smallest n_x")->capture_default_str();
  verify->add_option("--nx-max", vf.nx_max, "largest n_x")->capture_default_str();
  verify->add_option("--csv", vf.csv, "CSV output (default stdout)");
  verify->add_option("--json", vf.json, "JSON output");

  CircuitFlags ef;
  auto* exp = app.add_subcommand("export", "write a circuit listing");
  add_circuit_options(exp, ef);
  exp->add_option("--format", ef.format, "text | json")->capture_default_str();
  exp->add_option("-o,--output", ef.output, "output file (default stdout)");

  CircuitFlags cf;
  auto* count = app.add_subcommand("count", "gate tallies and closed-form CNOT costs");
  add_circuit_options(count, cf);
  count->add_option("--formula", cf.formulas, "Q_V0 Q_cV0 Q_V1 Q_V2 Q_cV1 Q_Vheat Q_Vadv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*solve) return cmd_solve(sf);
    if (*verify) return cmd_verify(vf);
    if (*exp) return cmd_export(ef);
    if (*count) return cmd_count(cf);
  } catch (const schro::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
