#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dcmpf/error.hpp"
#include "dcmpf/trotter.hpp"

namespace dcmpf {
namespace {

using kernels::Mat2;

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t step_cnots(const PauliWord& word) {
  switch (word.weight()) {
    case 1: return 0;
    case 2: return 2;
    default:
      fail(ErrorCode::UnsupportedLocality,
           "term '" + word.letters() + "' is " + std::to_string(word.weight()) + "-local; only 1- and 2-local terms compile");
  }
}

// Gates taking the letter's eigenbasis to the Z basis, in application order.
void to_z_basis(std::vector<Gate>& out, char letter, int q) {
  if (letter == 'X') {
    out.push_back({GateKind::H, q});
  } else if (letter == 'Y') {
    out.push_back({GateKind::SDG, q});
    out.push_back({GateKind::H, q});
  }
}

void from_z_basis(std::vector<Gate>& out, char letter, int q) {
  if (letter == 'X') {
    out.push_back({GateKind::H, q});
  } else if (letter == 'Y') {
    out.push_back({GateKind::H, q});
    out.push_back({GateKind::S, q});
  }
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RZ: return "RZ";
    case GateKind::RX: return "RX";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::SDG: return "SDG";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) fail(ErrorCode::Format, "gate qubit " + std::to_string(q) + " out of range");
}

}  // namespace

std::size_t GateList::cnot_total() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::CNOT; }));
}

Mat2 gate_matrix(const Gate& gate) {
  using C = std::complex<double>;
  switch (gate.kind) {
    case GateKind::RZ:
      return {std::polar(1.0, -0.5 * gate.angle), C{0}, C{0}, std::polar(1.0, 0.5 * gate.angle)};
    case GateKind::RX: {
      const double c = std::cos(0.5 * gate.angle), s = std::sin(0.5 * gate.angle);
      return {C{c, 0}, C{0, -s}, C{0, -s}, C{c, 0}};
    }
    case GateKind::H: return {C{kInvSqrt2}, C{kInvSqrt2}, C{kInvSqrt2}, C{-kInvSqrt2}};
    case GateKind::S: return {C{1}, C{0}, C{0}, C{0, 1}};
    case GateKind::SDG: return {C{1}, C{0}, C{0}, C{0, -1}};
    case GateKind::CNOT: break;
  }
  fail(ErrorCode::Invalid, "CNOT has no single-qubit matrix");
}

GateList compile_gates(const FormulaPlan& plan, const HamiltonianSpec& spec, double t) {
  GateList out{spec.n_qubits(), {}};
  for (const auto& step : plan.steps) {
    const auto& term = spec.terms().at(step.term);
    const double theta = term.coeff * step.fraction * t;  // exp(-i theta P)
    const auto sites = term.word.support();
    step_cnots(term.word);
    if (sites.size() == 1) {
      const int q = sites[0];
      switch (term.word.at(q)) {
        case 'X': out.gates.push_back({GateKind::RX, q, -1, 2 * theta}); break;
        case 'Z': out.gates.push_back({GateKind::RZ, q, -1, 2 * theta}); break;
        default:  // Y = S X S^dagger
          out.gates.push_back({GateKind::SDG, q});
          out.gates.push_back({GateKind::RX, q, -1, 2 * theta});
          out.gates.push_back({GateKind::S, q});
      }
      continue;
    }
    const int a = sites[0], b = sites[1];
    to_z_basis(out.gates, term.word.at(a), a);
    to_z_basis(out.gates, term.word.at(b), b);
    out.gates.push_back({GateKind::CNOT, a, b});
    out.gates.push_back({GateKind::RZ, b, -1, 2 * theta});
    out.gates.push_back({GateKind::CNOT, a, b});
    from_z_basis(out.gates, term.word.at(a), a);
    from_z_basis(out.gates, term.word.at(b), b);
  }
  return out;
}

std::size_t cnot_count(const FormulaPlan& plan, const HamiltonianSpec& spec) {
  std::size_t total = 0;
  for (const auto& step : plan.steps) total += step_cnots(spec.terms().at(step.term).word);
  return total;
}

void apply_gate(StateVector& state, const Gate& gate) {
  const int n = state.n_qubits();
  check_qubit(gate.q0, n);
  if (gate.kind == GateKind::CNOT) {
    check_qubit(gate.q1, n);
    if (gate.q0 == gate.q1) fail(ErrorCode::Format, "CNOT control equals target");
    kernels::active().apply_cnot(state.amplitudes(), gate.q0, gate.q1);
    return;
  }
  kernels::active().apply_1q(state.amplitudes(), gate.q0, gate_matrix(gate));
}

void apply_gate(DensityMatrix& rho, const Gate& gate) {
  const int n = rho.n_qubits();
  const auto& k = kernels::active();
  check_qubit(gate.q0, n);
  if (gate.kind == GateKind::CNOT) {
    check_qubit(gate.q1, n);
    if (gate.q0 == gate.q1) fail(ErrorCode::Format, "CNOT control equals target");
    k.apply_cnot(rho.entries(), gate.q0, gate.q1);
    k.apply_cnot(rho.entries(), gate.q0 + n, gate.q1 + n);
    return;
  }
  Mat2 m = gate_matrix(gate);
  k.apply_1q(rho.entries(), gate.q0, m);
  for (auto& entry : m) entry = std::conj(entry);
  k.apply_1q(rho.entries(), gate.q0 + n, m);
}

void run_gates(StateVector& state, const GateList& gates) {
  if (gates.n_qubits != state.n_qubits()) fail(ErrorCode::Shape, "gate list size mismatch");
  for (const auto& gate : gates.gates) apply_gate(state, gate);
}

std::string to_text(const GateList& gates) {
  std::string out = "# n_qubits " + std::to_string(gates.n_qubits) + "\n";
  char buf[64];
  for (const auto& g : gates.gates) {
    out += gate_name(g.kind);
    switch (g.kind) {
      case GateKind::RZ:
      case GateKind::RX:
        std::snprintf(buf, sizeof buf, " %d %.17g\n", g.q0, g.angle);
        out += buf;
        break;
      case GateKind::CNOT:
        std::snprintf(buf, sizeof buf, " %d %d\n#NOISE %d %d\n", g.q0, g.q1, g.q0, g.q1);
        out += buf;
        break;
      default:
        out += " " + std::to_string(g.q0) + "\n";
    }
  }
  return out;
}

GateList gate_list_from_text(std::string_view text) {
  GateList out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool expect_noise = false;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::Format, "gate list line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string op;
    fields >> op;
    if (op == "#NOISE") {
      int c = -1, t = -1;
      if (!(fields >> c >> t) || !expect_noise || out.gates.back().q0 != c || out.gates.back().q1 != t) {
        bad("noise marker does not follow its CNOT");
      }
      expect_noise = false;
      continue;
    }
    if (expect_noise) bad("CNOT without noise marker");
    if (op == "#") {
      std::string key;
      if (fields >> key && key == "n_qubits" && !(fields >> out.n_qubits)) bad("bad n_qubits header");
      continue;
    }
    if (op.starts_with("#")) continue;
    if (out.n_qubits < 1) bad("missing '# n_qubits N' header");
    Gate g;
    if (op == "RZ" || op == "RX") {
      g.kind = op == "RZ" ? GateKind::RZ : GateKind::RX;
      if (!(fields >> g.q0 >> g.angle)) bad("expected qubit and angle");
    } else if (op == "H" || op == "S" || op == "SDG") {
      g.kind = op == "H" ? GateKind::H : (op == "S" ? GateKind::S : GateKind::SDG);
      if (!(fields >> g.q0)) bad("expected qubit");
    } else if (op == "CNOT") {
      g.kind = GateKind::CNOT;
      if (!(fields >> g.q0 >> g.q1)) bad("expected control and target");
      check_qubit(g.q1, out.n_qubits);
      if (g.q0 == g.q1) bad("CNOT control equals target");
      expect_noise = true;
    } else {
      bad("unknown gate '" + op + "'");
    }
    std::string extra;
    if (fields >> extra) bad("trailing tokens");
    check_qubit(g.q0, out.n_qubits);
    out.gates.push_back(g);
  }
  if (expect_noise) fail(ErrorCode::Format, "final CNOT lacks its noise marker");
  return out;
}

}  // namespace dcmpf
