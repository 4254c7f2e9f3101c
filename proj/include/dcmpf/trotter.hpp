#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcmpf/kernels.hpp"
#include "dcmpf/pauli.hpp"
#include "dcmpf/state.hpp"

namespace dcmpf {

enum class FormulaKind { Lie1, Lie1Reversed, Suzuki2, Ruth3, Ruth3Reversed, Suzuki2k };

std::string_view to_string(FormulaKind kind);
FormulaKind formula_kind_from_string(std::string_view name);
// Partner with the exactly reversed exponential sequence. Symmetric kinds
// are their own partner.
FormulaKind reversed_kind(FormulaKind kind);
bool is_symmetric(FormulaKind kind);

struct ExactFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const ExactFraction&, const ExactFraction&) = default;
};

// One exponential exp(-i fraction * t * coeff_j * P_j), applied in sequence
// order (steps.front() acts first).
struct PlanStep {
  std::size_t term = 0;
  double fraction = 0.0;
  std::optional<ExactFraction> exact;
};

struct FormulaPlan {
  FormulaKind kind = FormulaKind::Lie1;
  int order = 1;
  int folds = 1;
  std::vector<PlanStep> steps;  // all folds, already expanded
  std::string audit;            // defining expression for irrational fractions
};

FormulaPlan lower_lie1(const HamiltonianSpec& spec, bool reversed, int folds);
FormulaPlan lower_suzuki2(const HamiltonianSpec& spec, int folds);
// Ruth's third-order splitting over the two-part grouping A + B of spec.
FormulaPlan lower_ruth3(const HamiltonianSpec& spec, bool reversed, int folds);
// Suzuki recursion T_{2k+2} built from T_2 through k levels.
FormulaPlan lower_suzuki_recursive(const HamiltonianSpec& spec, int k, int folds);

// Dispatch by kind; `suzuki_k` is used only for Suzuki2k.
FormulaPlan lower(FormulaKind kind, const HamiltonianSpec& spec, int folds, int suzuki_k = 1);

// Suzuki recursion weight 1 / (4 - 4^{1/(2k+1)}).
double suzuki_gamma(int k);

// Total time fraction per term over the whole plan (1 for every term).
std::vector<double> term_fraction_totals(const FormulaPlan& plan, std::size_t n_terms);

void apply_plan(StateVector& state, const FormulaPlan& plan, const HamiltonianSpec& spec, double t);
void apply_plan(DensityMatrix& rho, const FormulaPlan& plan, const HamiltonianSpec& spec, double t);

// --- gate-level compilation -------------------------------------------------

enum class GateKind { RZ, RX, H, S, SDG, CNOT };

struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;        // target, or control for CNOT
  int q1 = -1;       // CNOT target
  double angle = 0;  // RZ/RX: exp(-i angle sigma / 2)

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct GateList {
  int n_qubits = 0;
  std::vector<Gate> gates;

  std::size_t cnot_total() const;
};

kernels::Mat2 gate_matrix(const Gate& gate);

// Each 1-local rotation becomes one single-qubit gate sequence; each 2-local
// rotation becomes basis changes + CNOT, RZ, CNOT. No merging across
// exponential boundaries.
GateList compile_gates(const FormulaPlan& plan, const HamiltonianSpec& spec, double t);
std::size_t cnot_count(const FormulaPlan& plan, const HamiltonianSpec& spec);

void apply_gate(StateVector& state, const Gate& gate);
void apply_gate(DensityMatrix& rho, const Gate& gate);
void run_gates(StateVector& state, const GateList& gates);

// Line format: "# n_qubits N" header, then RZ q a | RX q a | H q | S q |
// SDG q | CNOT c t, with a "#NOISE c t" marker after every CNOT. Qubits are
// zero-based site indices.
std::string to_text(const GateList& gates);
GateList gate_list_from_text(std::string_view text);

}  // namespace dcmpf
