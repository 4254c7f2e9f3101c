#include "dcmpf/trotter.hpp"

#include <algorithm>
#include <cmath>

#include "dcmpf/error.hpp"

namespace dcmpf {
namespace {

void check_folds(int folds) {
  if (folds < 1) fail(ErrorCode::Invalid, "folds must be >= 1");
}

// One unfolded sweep over the terms with the given fraction each.
void append_sweep(std::vector<PlanStep>& steps, std::size_t n_terms, bool reversed,
                  double fraction, std::optional<ExactFraction> exact) {
  for (std::size_t i = 0; i < n_terms; ++i) {
    const std::size_t term = reversed ? n_terms - 1 - i : i;
    steps.push_back({term, fraction, exact});
  }
}

std::vector<PlanStep> repeat(const std::vector<PlanStep>& unit, int folds) {
  std::vector<PlanStep> steps;
  steps.reserve(unit.size() * static_cast<std::size_t>(folds));
  for (int f = 0; f < folds; ++f) steps.insert(steps.end(), unit.begin(), unit.end());
  return steps;
}

// Scale a single-fold step sequence by 1/folds and repeat it.
std::vector<PlanStep> fold(std::vector<PlanStep> unit, int folds) {
  for (auto& step : unit) {
    step.fraction /= folds;
    if (step.exact) step.exact->den *= folds;
  }
  return repeat(unit, folds);
}

std::vector<PlanStep> suzuki2_unit(std::size_t n_terms, double scale) {
  std::vector<PlanStep> steps;
  append_sweep(steps, n_terms, false, 0.5 * scale, std::nullopt);
  append_sweep(steps, n_terms, true, 0.5 * scale, std::nullopt);
  return steps;
}

// T_{2k+2}(s) = T_{2k}(g s)^2 T_{2k}((1-4g) s) T_{2k}(g s)^2
std::vector<PlanStep> suzuki_unit(std::size_t n_terms, int level, double scale) {
  if (level == 0) return suzuki2_unit(n_terms, scale);
  const double g = suzuki_gamma(level);
  const auto outer = suzuki_unit(n_terms, level - 1, g * scale);
  const auto middle = suzuki_unit(n_terms, level - 1, (1.0 - 4.0 * g) * scale);
  std::vector<PlanStep> steps;
  steps.reserve(5 * outer.size());
  for (int i = 0; i < 2; ++i) steps.insert(steps.end(), outer.begin(), outer.end());
  steps.insert(steps.end(), middle.begin(), middle.end());
  for (int i = 0; i < 2; ++i) steps.insert(steps.end(), outer.begin(), outer.end());
  return steps;
}

}  // namespace

std::string_view to_string(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::Lie1: return "lie1";
    case FormulaKind::Lie1Reversed: return "lie1_reversed";
    case FormulaKind::Suzuki2: return "suzuki2";
    case FormulaKind::Ruth3: return "ruth3";
    case FormulaKind::Ruth3Reversed: return "ruth3_reversed";
    case FormulaKind::Suzuki2k: return "suzuki_2k";
  }
  return "unknown";
}

FormulaKind formula_kind_from_string(std::string_view name) {
  for (FormulaKind kind : {FormulaKind::Lie1, FormulaKind::Lie1Reversed, FormulaKind::Suzuki2,
                           FormulaKind::Ruth3, FormulaKind::Ruth3Reversed, FormulaKind::Suzuki2k}) {
    if (to_string(kind) == name) return kind;
  }
  fail(ErrorCode::Configuration, "unknown formula kind '" + std::string(name) + "'");
}

FormulaKind reversed_kind(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::Lie1: return FormulaKind::Lie1Reversed;
    case FormulaKind::Lie1Reversed: return FormulaKind::Lie1;
    case FormulaKind::Ruth3: return FormulaKind::Ruth3Reversed;
    case FormulaKind::Ruth3Reversed: return FormulaKind::Ruth3;
    default: return kind;
  }
}

bool is_symmetric(FormulaKind kind) {
  return kind == FormulaKind::Suzuki2 || kind == FormulaKind::Suzuki2k;
}

double suzuki_gamma(int k) {
  if (k < 1) fail(ErrorCode::Invalid, "Suzuki recursion level must be >= 1");
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k + 1.0)));
}

FormulaPlan lower_lie1(const HamiltonianSpec& spec, bool reversed, int folds) {
  check_folds(folds);
  std::vector<PlanStep> unit;
  append_sweep(unit, spec.size(), reversed, 1.0, ExactFraction{1, 1});
  return {reversed ? FormulaKind::Lie1Reversed : FormulaKind::Lie1, 1, folds, fold(std::move(unit), folds), {}};
}

FormulaPlan lower_suzuki2(const HamiltonianSpec& spec, int folds) {
  check_folds(folds);
  std::vector<PlanStep> unit;
  append_sweep(unit, spec.size(), false, 0.5, ExactFraction{1, 2});
  append_sweep(unit, spec.size(), true, 0.5, ExactFraction{1, 2});
  return {FormulaKind::Suzuki2, 2, folds, fold(std::move(unit), folds), {}};
}

FormulaPlan lower_ruth3(const HamiltonianSpec& spec, bool reversed, int folds) {
  check_folds(folds);
  const auto& groups = spec.groups();
  if (groups.size() != 2) {
    fail(ErrorCode::Configuration, "ruth3 needs exactly two term groups (H = A + B), got " +
                                       std::to_string(groups.size()));
  }
  for (const auto& group : groups) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        if (!spec.terms()[group[a]].word.commutes_with(spec.terms()[group[b]].word)) {
          fail(ErrorCode::Configuration, "ruth3 groups must contain mutually commuting terms");
        }
      }
    }
  }
  // exp(-i d1 s A) exp(-i c1 s B) exp(-i d2 s A) exp(-i c2 s B) exp(-i d3 s A) exp(-i c3 s B)
  static constexpr ExactFraction kD[3] = {{7, 24}, {3, 4}, {-1, 24}};
  static constexpr ExactFraction kC[3] = {{2, 3}, {-2, 3}, {1, 1}};
  std::vector<PlanStep> unit;
  for (int stage = 0; stage < 3; ++stage) {
    for (std::size_t term : groups[0]) unit.push_back({term, kD[stage].value(), kD[stage]});
    for (std::size_t term : groups[1]) unit.push_back({term, kC[stage].value(), kC[stage]});
  }
  if (reversed) std::reverse(unit.begin(), unit.end());
  return {reversed ? FormulaKind::Ruth3Reversed : FormulaKind::Ruth3, 3, folds, fold(std::move(unit), folds), {}};
}

FormulaPlan lower_suzuki_recursive(const HamiltonianSpec& spec, int k, int folds) {
  check_folds(folds);
  if (k < 1) fail(ErrorCode::Invalid, "Suzuki recursion level must be >= 1");
  FormulaPlan plan{FormulaKind::Suzuki2k, 2 * k + 2, folds, fold(suzuki_unit(spec.size(), k, 1.0), folds), {}};
  plan.audit = "T_{2j+2}(s) = T_{2j}(g_j s)^2 T_{2j}((1-4 g_j) s) T_{2j}(g_j s)^2, "
               "g_j = 1/(4 - 4^(1/(2j+1))), j = 1.." + std::to_string(k);
  return plan;
}

FormulaPlan lower(FormulaKind kind, const HamiltonianSpec& spec, int folds, int suzuki_k) {
  switch (kind) {
    case FormulaKind::Lie1: return lower_lie1(spec, false, folds);
    case FormulaKind::Lie1Reversed: return lower_lie1(spec, true, folds);
    case FormulaKind::Suzuki2: return lower_suzuki2(spec, folds);
    case FormulaKind::Ruth3: return lower_ruth3(spec, false, folds);
    case FormulaKind::Ruth3Reversed: return lower_ruth3(spec, true, folds);
    case FormulaKind::Suzuki2k: return lower_suzuki_recursive(spec, suzuki_k, folds);
  }
  fail(ErrorCode::Invalid, "unknown formula kind");
}

std::vector<double> term_fraction_totals(const FormulaPlan& plan, std::size_t n_terms) {
  std::vector<double> totals(n_terms, 0.0);
  for (const auto& step : plan.steps) {
    if (step.term >= n_terms) fail(ErrorCode::Shape, "plan references a missing term");
    totals[step.term] += step.fraction;
  }
  return totals;
}

void apply_plan(StateVector& state, const FormulaPlan& plan, const HamiltonianSpec& spec, double t) {
  for (const auto& step : plan.steps) {
    const auto& term = spec.terms().at(step.term);
    apply_pauli_rotation(state, term.word, term.coeff * step.fraction * t);
  }
}

void apply_plan(DensityMatrix& rho, const FormulaPlan& plan, const HamiltonianSpec& spec, double t) {
  for (const auto& step : plan.steps) {
    const auto& term = spec.terms().at(step.term);
    apply_pauli_rotation(rho, term.word, term.coeff * step.fraction * t);
  }
}

}  // namespace dcmpf
