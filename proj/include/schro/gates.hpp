#pragma once

// Circuit intermediate representation.
//
// Qubits are 1-based. Qubit q carries significance 2^(q-1) in a basis label,
// so in a tensor string the leftmost factor acts on the most significant
// qubit and S^-|j> = |j-1> holds literally on basis labels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schro/errors.hpp"

namespace schro {

enum class GateKind { Hadamard, PauliX, Phase, RotationZ, GlobalPhase };

inline const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Hadamard: return "H";
    case GateKind::PauliX: return "X";
    case GateKind::Phase: return "P";
    case GateKind::RotationZ: return "RZ";
    case GateKind::GlobalPhase: return "PH";
  }
  return "?";
}

inline bool has_param(GateKind kind) {
  return kind == GateKind::Phase || kind == GateKind::RotationZ ||
         kind == GateKind::GlobalPhase;
}

/// One primitive operation. `controls` is kept sorted; `target` is 0 for
/// GlobalPhase, which never carries controls.
///
/// Conventions: Phase(l) = diag(1, e^{il}); RotationZ(t) = exp(-i t Z / 2);
/// GlobalPhase(t) = e^{it} I.
struct Gate {
  GateKind kind = GateKind::Hadamard;
  int target = 0;
  std::vector<int> controls;
  double param = 0.0;

  bool operator==(const Gate&) const = default;

  bool is_cnot() const { return kind == GateKind::PauliX && controls.size() == 1; }
};

namespace gate {

inline Gate h(int q) { return {GateKind::Hadamard, q, {}, 0.0}; }
inline Gate x(int q) { return {GateKind::PauliX, q, {}, 0.0}; }
inline Gate cnot(int control, int target) { return {GateKind::PauliX, target, {control}, 0.0}; }
inline Gate phase(int q, double lambda) { return {GateKind::Phase, q, {}, lambda}; }
inline Gate rz(int q, double theta) { return {GateKind::RotationZ, q, {}, theta}; }
inline Gate global_phase(double theta) { return {GateKind::GlobalPhase, 0, {}, theta}; }

/// RZ(theta) on `target`, active when every qubit in `controls` is |1>.
inline Gate mcrz(int target, std::vector<int> controls, double theta) {
  std::sort(controls.begin(), controls.end());
  return {GateKind::RotationZ, target, std::move(controls), theta};
}

}  // namespace gate

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits, std::string label = {})
      : n_qubits_(n_qubits), label_(std::move(label)) {
    if (n_qubits < 0) throw CircuitError("negative qubit count");
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  Circuit& set_label(std::string label) {
    label_ = std::move(label);
    return *this;
  }

  /// Appends after validating wires against this register.
  Circuit& push(Gate g) {
    std::sort(g.controls.begin(), g.controls.end());
    validate(g);
    gates_.push_back(std::move(g));
    return *this;
  }

  Circuit& append(const Circuit& other) {
    if (other.n_qubits_ != n_qubits_) {
      throw CircuitError("qubit-count mismatch: " + std::to_string(n_qubits_) + " vs " +
                         std::to_string(other.n_qubits_));
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }

  bool operator==(const Circuit& other) const {
    return n_qubits_ == other.n_qubits_ && gates_ == other.gates_;
  }

 private:
  void validate(const Gate& g) const {
    if (g.kind == GateKind::GlobalPhase) {
      if (g.target != 0 || !g.controls.empty()) {
        throw CircuitError("global phase gate takes no wires");
      }
      return;
    }
    if (g.target < 1 || g.target > n_qubits_) {
      throw CircuitError("target " + std::to_string(g.target) + " outside 1.." +
                         std::to_string(n_qubits_));
    }
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
      const int c = g.controls[i];
      if (c < 1 || c > n_qubits_) {
        throw CircuitError("control " + std::to_string(c) + " outside 1.." +
                           std::to_string(n_qubits_));
      }
      if (c == g.target) throw CircuitError("control coincides with target");
      if (i > 0 && g.controls[i - 1] == c) throw CircuitError("duplicate control");
    }
  }

  int n_qubits_ = 0;
  std::string label_;
  std::vector<Gate> gates_;
};

/// Gates of `a` followed by gates of `b`; dense(compose(a, b)) = dense(b) dense(a).
inline Circuit compose(const Circuit& a, const Circuit& b) {
  Circuit out(a.n_qubits(), a.label());
  out.append(a);
  out.append(b);
  return out;
}

inline Gate inverse(Gate g) {
  if (has_param(g.kind)) g.param = -g.param;
  return g;
}

inline Circuit dagger(const Circuit& c) {
  Circuit out(c.n_qubits(), c.label().empty() ? std::string{} : c.label() + "^dag");
  const auto& gs = c.gates();
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) out.push(inverse(*it));
  return out;
}

/// `times` back-to-back copies of c. Negative powers go through dagger().
inline Circuit repeat(const Circuit& c, std::int64_t times) {
  if (times < 0) throw DomainError("repeat count must be >= 0");
  Circuit out(c.n_qubits(), c.label());
  for (std::int64_t i = 0; i < times; ++i) out.append(c);
  return out;
}

inline Circuit power(const Circuit& c, std::int64_t exponent) {
  return exponent >= 0 ? repeat(c, exponent) : repeat(dagger(c), -exponent);
}

/// Re-homes a circuit onto a wider register: qubit q becomes q + offset.
inline Circuit embed(const Circuit& c, int n_total, int offset) {
  if (offset < 0 || offset + c.n_qubits() > n_total) {
    throw CircuitError("embedding of " + std::to_string(c.n_qubits()) + " qubits at offset " +
                       std::to_string(offset) + " does not fit " + std::to_string(n_total));
  }
  Circuit out(n_total, c.label());
  for (Gate g : c.gates()) {
    if (g.kind != GateKind::GlobalPhase) {
      g.target += offset;
      for (int& q : g.controls) q += offset;
    }
    out.push(std::move(g));
  }
  return out;
}

/// Adds `new_controls` to every gate. A global phase under control is a
/// relative phase, so GlobalPhase(t) turns into Phase(t) on the highest new
/// control, conditioned on the remaining ones.
inline Circuit lift_controlled(const Circuit& c, std::vector<int> new_controls) {
  std::sort(new_controls.begin(), new_controls.end());
  if (std::adjacent_find(new_controls.begin(), new_controls.end()) != new_controls.end()) {
    throw CircuitError("duplicate control in lift");
  }
  Circuit out(c.n_qubits(), c.label().empty() ? std::string{} : "c-" + c.label());
  if (new_controls.empty()) {
    out.append(c);
    return out;
  }
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::GlobalPhase) {
      Gate p{GateKind::Phase, new_controls.back(),
             std::vector<int>(new_controls.begin(), new_controls.end() - 1), g.param};
      out.push(std::move(p));
      continue;
    }
    for (int q : new_controls) {
      if (q == g.target || std::binary_search(g.controls.begin(), g.controls.end(), q)) {
        throw CircuitError("new control " + std::to_string(q) + " overlaps a gate wire");
      }
    }
    Gate lifted = g;
    lifted.controls.insert(lifted.controls.end(), new_controls.begin(), new_controls.end());
    out.push(std::move(lifted));
  }
  return out;
}

/// Native tallies of a circuit as built. Every RotationZ lands in
/// `mcrz_by_controls` keyed by its control count (0 for a bare RZ).
/// `single_qubit` covers uncontrolled H/X/P and GlobalPhase; X with one
/// control is a CNOT; any other controlled gate goes to `controlled_other`.
struct GateCounts {
  std::int64_t single_qubit = 0;
  std::int64_t cnot = 0;
  std::int64_t controlled_other = 0;
  std::map<int, std::int64_t> mcrz_by_controls;

  std::int64_t mcrz_total() const {
    std::int64_t n = 0;
    for (const auto& [k, v] : mcrz_by_controls) n += v;
    return n;
  }

  GateCounts& operator+=(const GateCounts& o) {
    single_qubit += o.single_qubit;
    cnot += o.cnot;
    controlled_other += o.controlled_other;
    for (const auto& [k, v] : o.mcrz_by_controls) mcrz_by_controls[k] += v;
    return *this;
  }

  bool operator==(const GateCounts&) const = default;
};

inline GateCounts count_native(const Circuit& c) {
  GateCounts counts;
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::RotationZ) {
      ++counts.mcrz_by_controls[static_cast<int>(g.controls.size())];
    } else if (g.kind == GateKind::GlobalPhase || g.controls.empty()) {
      ++counts.single_qubit;
    } else if (g.is_cnot()) {
      ++counts.cnot;
    } else {
      ++counts.controlled_other;
    }
  }
  return counts;
}

/// Closed-form CNOT-equivalent costs, assuming a (j-1)-controlled RZ costs
/// at most 16j - 40 CNOTs. Valid for n_x >= 3.
enum class CnotFormula { V0, ControlledV0, V1, V2, ControlledV1, VHeat, VAdv };

inline const char* formula_name(CnotFormula f) {
  switch (f) {
    case CnotFormula::V0: return "Q_V0";
    case CnotFormula::ControlledV0: return "Q_cV0";
    case CnotFormula::V1: return "Q_V1";
    case CnotFormula::V2: return "Q_V2";
    case CnotFormula::ControlledV1: return "Q_cV1";
    case CnotFormula::VHeat: return "Q_Vheat";
    case CnotFormula::VAdv: return "Q_Vadv";
  }
  return "?";
}

inline std::int64_t cnot_equivalent(CnotFormula f, std::int64_t n_x, std::int64_t n_p = 1,
                                    std::int64_t d = 1) {
  if (n_x < 3) {
    throw DomainError(std::string(formula_name(f)) + " is only valid for n_x >= 3 (got n_x=" +
                      std::to_string(n_x) + ")");
  }
  if (n_p < 1 || d < 1) throw DomainError("n_p and d must be >= 1");
  const std::int64_t q_v0 = 9 * n_x * n_x - 33 * n_x + 34;
  const std::int64_t q_cv0 = 16 * n_x * n_x - 22 * n_x + 10;
  const std::int64_t q_v1 = 9 * n_x * n_x - 15 * n_x - 8;
  const std::int64_t q_cv1 = 16 * n_x * n_x - 2 * n_x - 30;
  const std::int64_t half = std::int64_t{1} << (n_p - 1);
  const std::int64_t controlled = (std::int64_t{1} << n_p) - 1;
  switch (f) {
    case CnotFormula::V0: return q_v0;
    case CnotFormula::ControlledV0: return q_cv0;
    case CnotFormula::V1:
    case CnotFormula::V2: return q_v1;
    case CnotFormula::ControlledV1: return q_cv1;
    case CnotFormula::VHeat: return d * half * q_v0 + d * controlled * q_cv0;
    case CnotFormula::VAdv: return d * q_v1 + d * half * q_v1 + d * controlled * q_cv1;
  }
  return 0;
}

}  // namespace schro
