#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dcmpf/mpf.hpp"
#include "dcmpf/pauli.hpp"
#include "dcmpf/trotter.hpp"

namespace dcmpf {

struct FitResult {
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;  // RMS of the log residuals
};

// Ordinary least squares of log|err| = log c1 + c2 K log(ratio).
FitResult fit_error_exponent(const std::vector<std::pair<int, double>>& points, double ratio);

// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// Dense operator for time t.
using OperatorBuilder = std::function<DenseOperator(double)>;

// Dense matrix of the plan at time t, assembled column by column.
DenseOperator plan_operator(const FormulaPlan& plan, const HamiltonianSpec& spec, double t,
                            int oracle_limit = kDefaultOracleLimit);

OperatorBuilder formula_builder(FormulaKind kind, const HamiltonianSpec& spec, int folds = 1);

// sum_i c_i T^{n_i}(t) for regular/symmetric, and
// (1/2) sum_i c_i (T^{n_i}(t) + Tbar^{n_i}(t)) for dual.
OperatorBuilder scheme_builder(const MpfScheme& scheme, FormulaKind base, const HamiltonianSpec& spec);

enum class OperatorNorm { Spectral, Frobenius };

inline const std::vector<double> kDefaultOrderGrid{0.05, 0.1, 0.2, 0.3, 0.4};

// log-log slope of ||F(t) - exp(-iHt)|| over the grid.
double estimate_operator_order(const OperatorBuilder& builder, const HamiltonianSpec& spec,
                               const std::vector<double>& t_grid = kDefaultOrderGrid,
                               OperatorNorm norm = OperatorNorm::Spectral);

double operator_norm(const DenseOperator& op, OperatorNorm norm = OperatorNorm::Spectral);

}  // namespace dcmpf
