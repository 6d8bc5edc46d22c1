#pragma once

// Circuit listings.
//
// Text form, one directive per line:
//
//   QUBITS <n>
//   LABEL <free text>            (optional)
//   <KIND> <target> [controls...] [param]
//   PH <param>                   (global phase, no wires)
//
// KIND is one of H, X, P, RZ, PH. P and RZ always end with their angle.
// Blank lines and lines starting with '#' are ignored. Angles are written
// with 17 significant digits so parse(to_text(c)) == c exactly.

#include <cstdio>
#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "schro/gates.hpp"

namespace schro {

inline GateKind parse_kind(const std::string& token) {
  if (token == "H") return GateKind::Hadamard;
  if (token == "X") return GateKind::PauliX;
  if (token == "P") return GateKind::Phase;
  if (token == "RZ") return GateKind::RotationZ;
  if (token == "PH") return GateKind::GlobalPhase;
  throw CircuitError("unknown gate kind '" + token + "'");
}

inline std::string format_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_text(const Circuit& c) {
  std::ostringstream os;
  os << "QUBITS " << c.n_qubits() << '\n';
  if (!c.label().empty()) os << "LABEL " << c.label() << '\n';
  for (const Gate& g : c.gates()) {
    os << kind_name(g.kind);
    if (g.kind != GateKind::GlobalPhase) os << ' ' << g.target;
    for (int q : g.controls) os << ' ' << q;
    if (has_param(g.kind)) os << ' ' << format_angle(g.param);
    os << '\n';
  }
  return os.str();
}

inline Circuit circuit_from_text(std::istream& in) {
  std::string line;
  int line_no = 0;
  Circuit c;
  bool have_header = false;
  std::string label;
  auto fail = [&](const std::string& what) {
    throw CircuitError("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "QUBITS") {
      int n = -1;
      if (!(ls >> n) || n < 0) fail("bad QUBITS directive");
      c = Circuit(n, label);
      have_header = true;
      continue;
    }
    if (head == "LABEL") {
      std::string rest;
      std::getline(ls, rest);
      const auto s = rest.find_first_not_of(' ');
      label = s == std::string::npos ? std::string{} : rest.substr(s);
      while (!label.empty() && (label.back() == '\r' || label.back() == ' ')) label.pop_back();
      c.set_label(label);
      continue;
    }
    if (!have_header) fail("gate before QUBITS directive");
    Gate g;
    try {
      g.kind = parse_kind(head);
    } catch (const CircuitError& e) {
      fail(e.what());
    }
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    try {
      if (has_param(g.kind)) {
        if (tokens.empty()) fail("missing angle");
        g.param = std::stod(tokens.back());
        tokens.pop_back();
      }
      if (g.kind != GateKind::GlobalPhase) {
        if (tokens.empty()) fail("missing target");
        g.target = std::stoi(tokens.front());
        for (std::size_t i = 1; i < tokens.size(); ++i) g.controls.push_back(std::stoi(tokens[i]));
      } else if (!tokens.empty()) {
        fail("global phase takes no wires");
      }
      c.push(std::move(g));
    } catch (const std::logic_error& e) {
      fail(e.what());
    }
  }
  if (!have_header) throw CircuitError("missing QUBITS directive");
  return c;
}

inline Circuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  return circuit_from_text(in);
}

inline nlohmann::json to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates()) {
    nlohmann::json j;
    j["kind"] = kind_name(g.kind);
    if (g.kind != GateKind::GlobalPhase) j["target"] = g.target;
    j["controls"] = g.controls;
    if (has_param(g.kind)) j["param"] = g.param;
    gates.push_back(std::move(j));
  }
  return {{"n_qubits", c.n_qubits()}, {"label", c.label()}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    Circuit c(j.at("n_qubits").get<int>(), j.value("label", std::string{}));
    for (const auto& jg : j.at("gates")) {
      Gate g;
      g.kind = parse_kind(jg.at("kind").get<std::string>());
      g.target = jg.value("target", 0);
      g.controls = jg.value("controls", std::vector<int>{});
      g.param = jg.value("param", 0.0);
      c.push(std::move(g));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw CircuitError(std::string("malformed circuit JSON: ") + e.what());
  }
}

}  // namespace schro
