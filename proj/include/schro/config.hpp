#pragma once

// Experiment configuration: one JSON document describing a heat or
// advection solve, plus initial-condition profiles sampled on the grid.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "schro/advection.hpp"
#include "schro/heat.hpp"

namespace schro {

enum class Equation { Heat, Advection };

inline const char* equation_name(Equation e) { return e == Equation::Heat ? "heat" : "advection"; }

inline Equation parse_equation(const std::string& s) {
  if (s == "heat") return Equation::Heat;
  if (s == "advection" || s == "adv") return Equation::Advection;
  throw DomainError("equation must be heat or advection (got '" + s + "')");
}

inline Evolution parse_evolution(const std::string& s) {
  if (s == "circuit") return Evolution::Circuit;
  if (s == "exact") return Evolution::Exact;
  throw DomainError("evolution must be circuit or exact (got '" + s + "')");
}

inline const char* evolution_name(Evolution e) { return e == Evolution::Circuit ? "circuit" : "exact"; }

struct Profile {
  std::string name = "sine";  // sine | gaussian | step | constant
  int mode = 1;               // sine: sin(mode pi x / L)
  std::optional<double> center;  // gaussian / step; defaults to L/2
  double width = 0.1;            // gaussian standard deviation

  bool operator==(const Profile&) const = default;
};

struct ExperimentConfig {
  Equation equation = Equation::Heat;
  double a = 1.0;
  std::vector<double> a_vec{1.0};
  double L = 1.0;
  double T = 0.05;
  int n_x = 3;
  int d = 1;
  int n_p = 7;
  double R = 3.0;
  double epsilon = 0.01;
  std::optional<std::int64_t> r;
  std::optional<std::int64_t> postselect_k;
  Evolution evolution = Evolution::Circuit;
  Profile profile;
  std::optional<std::string> u0_csv;
  std::string report = "report.json";
  std::string solution = "solution.csv";

  bool operator==(const ExperimentConfig&) const = default;

  GridSpec grid() const {
    return {d, n_x, L, equation == Equation::Heat ? Boundary::Dirichlet : Boundary::Periodic};
  }
  PGrid pgrid() const { return {R, n_p}; }
};

inline void validate(const ExperimentConfig& c) {
  if (c.n_x < 1) throw DomainError("n_x must be >= 1 (got " + std::to_string(c.n_x) + ")");
  if (c.d < 1) throw DomainError("d must be >= 1 (got " + std::to_string(c.d) + ")");
  if (c.n_p < 1) throw DomainError("n_p must be >= 1 (got " + std::to_string(c.n_p) + ")");
  if (!(c.L > 0.0)) throw DomainError("L must be > 0");
  if (!(c.R > 0.0)) throw DomainError("R must be > 0");
  if (c.T < 0.0) throw DomainError("T must be >= 0");
  if (!(c.epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  if (c.r && *c.r < 0) throw DomainError("r must be >= 0");
  if (c.d * c.n_x + c.n_p > kMaxStateQubits) {
    throw CapacityError("d*n_x + n_p = " + std::to_string(c.d * c.n_x + c.n_p) + " exceeds " +
                        std::to_string(kMaxStateQubits) + " qubits");
  }
  if (c.equation == Equation::Heat) {
    if (!(c.a > 0.0)) throw DomainError("a must be > 0");
  } else {
    if (c.n_x < 2) throw DomainError("n_x must be >= 2 for advection");
    if (static_cast<int>(c.a_vec.size()) != c.d) {
      throw DomainError("a_vec has " + std::to_string(c.a_vec.size()) + " entries but d=" +
                        std::to_string(c.d));
    }
  }
  if (c.postselect_k) {
    const PGrid pg = c.pgrid();
    if (*c.postselect_k < 0 || *c.postselect_k >= pg.N() || !(pg.p(*c.postselect_k) > 0.0)) {
      throw DomainError("postselect_k must index a grid point with p_k > 0");
    }
  }
  const auto& n = c.profile.name;
  if (!c.u0_csv && n != "sine" && n != "gaussian" && n != "step" && n != "constant") {
    throw DomainError("profile must be sine, gaussian, step or constant (got '" + n + "')");
  }
  if (n == "gaussian" && !(c.profile.width > 0.0)) throw DomainError("profile width must be > 0");
}

// ------------------------------------------------------------- JSON

inline nlohmann::json to_json(const Profile& p) {
  nlohmann::json j{{"name", p.name}, {"mode", p.mode}, {"width", p.width}};
  j["center"] = p.center ? nlohmann::json(*p.center) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["equation"] = equation_name(c.equation);
  j["a"] = c.a;
  j["a_vec"] = c.a_vec;
  j["L"] = c.L;
  j["T"] = c.T;
  j["n_x"] = c.n_x;
  j["d"] = c.d;
  j["n_p"] = c.n_p;
  j["R"] = c.R;
  j["epsilon"] = c.epsilon;
  j["r"] = c.r ? nlohmann::json(*c.r) : nlohmann::json(nullptr);
  j["postselect_k"] = c.postselect_k ? nlohmann::json(*c.postselect_k) : nlohmann::json(nullptr);
  j["evolution"] = evolution_name(c.evolution);
  j["profile"] = to_json(c.profile);
  j["u0_csv"] = c.u0_csv ? nlohmann::json(*c.u0_csv) : nlohmann::json(nullptr);
  j["report"] = c.report;
  j["solution"] = c.solution;
  return j;
}

namespace detail {

template <class T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw DomainError(std::string("config field '") + key + "' has the wrong type");
  }
}

template <class T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    out.reset();
    return;
  }
  T v{};
  read_field(j, key, v);
  out = v;
}

}  // namespace detail

/// Fields missing from `j` keep the values already in `base`.
inline ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {}) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  static const char* known[] = {"equation", "a",        "a_vec",        "L",         "T",
                                "n_x",      "d",        "n_p",          "R",         "epsilon",
                                "r",        "postselect_k", "evolution", "profile",  "u0_csv",
                                "report",   "solution"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw DomainError("unknown config field '" + key + "'");
  }
  ExperimentConfig c = std::move(base);
  if (j.contains("equation")) c.equation = parse_equation(j.at("equation").get<std::string>());
  detail::read_field(j, "a", c.a);
  detail::read_field(j, "a_vec", c.a_vec);
  detail::read_field(j, "L", c.L);
  detail::read_field(j, "T", c.T);
  detail::read_field(j, "n_x", c.n_x);
  detail::read_field(j, "d", c.d);
  detail::read_field(j, "n_p", c.n_p);
  detail::read_field(j, "R", c.R);
  detail::read_field(j, "epsilon", c.epsilon);
  detail::read_optional(j, "r", c.r);
  detail::read_optional(j, "postselect_k", c.postselect_k);
  if (j.contains("evolution")) c.evolution = parse_evolution(j.at("evolution").get<std::string>());
  if (j.contains("profile")) {
    const auto& p = j.at("profile");
    if (p.is_string()) {
      c.profile.name = p.get<std::string>();
    } else {
      detail::read_field(p, "name", c.profile.name);
      detail::read_field(p, "mode", c.profile.mode);
      detail::read_field(p, "width", c.profile.width);
      detail::read_optional(p, "center", c.profile.center);
    }
  }
  detail::read_optional(j, "u0_csv", c.u0_csv);
  detail::read_field(j, "report", c.report);
  detail::read_field(j, "solution", c.solution);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

// ----------------------------------------------------------- profiles

/// Cell-centre coordinate of grid index i along one dimension.
inline double grid_coordinate(const GridSpec& g, Eigen::Index i) {
  return (static_cast<double>(i) + 0.5) * g.h();
}

inline double profile_1d(const Profile& p, double x, double L) {
  const double c = p.center.value_or(L / 2.0);
  if (p.name == "sine") return std::sin(p.mode * std::numbers::pi * x / L);
  if (p.name == "gaussian") return std::exp(-(x - c) * (x - c) / (2.0 * p.width * p.width));
  if (p.name == "step") return x < c ? 1.0 : 0.0;
  if (p.name == "constant") return 1.0;
  throw DomainError("unknown profile '" + p.name + "'");
}

/// Product profile over all dimensions; the flat index carries dimension 1
/// in its lowest n_x bits.
inline ComplexVector sample_profile(const Profile& p, const GridSpec& g) {
  const Eigen::Index n = g.points();
  ComplexVector u(g.total_points());
  for (Eigen::Index flat = 0; flat < u.size(); ++flat) {
    double v = 1.0;
    Eigen::Index rest = flat;
    for (int alpha = 0; alpha < g.d; ++alpha) {
      v *= profile_1d(p, grid_coordinate(g, rest % n), g.L);
      rest /= n;
    }
    u[flat] = v;
  }
  return u;
}

/// One value per line, either "re" or "re,im"; a non-numeric first line is
/// taken as a header.
inline ComplexVector load_u0_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open u0 file '" + path + "'");
  std::vector<cplx> vals;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> re)) {
      if (first) {
        first = false;
        continue;
      }
      throw DomainError("bad number in '" + path + "': " + line);
    }
    first = false;
    ls >> im;
    vals.emplace_back(re, im);
  }
  ComplexVector u(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) u[static_cast<Eigen::Index>(i)] = vals[i];
  return u;
}

inline ComplexVector initial_condition(const ExperimentConfig& c) {
  const GridSpec g = c.grid();
  ComplexVector u = c.u0_csv ? load_u0_csv(*c.u0_csv) : sample_profile(c.profile, g);
  if (u.size() != g.total_points()) {
    throw DimensionError("u0 has " + std::to_string(u.size()) + " entries, grid needs " +
                         std::to_string(g.total_points()));
  }
  if (!(u.norm() > 0.0)) throw DomainError("u0 is identically zero on the grid");
  return u;
}

inline HeatProblem heat_problem(const ExperimentConfig& c) {
  HeatProblem p{c.a, c.grid(), c.pgrid(), c.T, 1};
  p.r = c.r ? *c.r : (c.T > 0.0 ? std::max<std::int64_t>(1, p.budget(c.epsilon)) : 0);
  p.validate();
  return p;
}

inline AdvectionProblem advection_problem(const ExperimentConfig& c) {
  AdvectionProblem p{c.a_vec, c.grid(), c.pgrid(), c.T, 1};
  p.r = c.r ? *c.r : (c.T > 0.0 ? std::max<std::int64_t>(1, p.budget(c.epsilon)) : 0);
  p.validate();
  return p;
}

}  // namespace schro
