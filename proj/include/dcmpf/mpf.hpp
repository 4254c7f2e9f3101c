#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dcmpf/pauli.hpp"
#include "dcmpf/rational.hpp"
#include "dcmpf/trotter.hpp"

namespace dcmpf {

// regular:   sum_i c_i T^{n_i}(t/n_i), T of order alpha without symmetry
// symmetric: the same sum with a symmetric (even-order) T
// dual:      (1/2) sum_i c_i (T^{n_i} + Tbar^{n_i}), Tbar the reversed partner
enum class MpfMode { Regular, Symmetric, Dual };

std::string_view to_string(MpfMode mode);
MpfMode mpf_mode_from_string(std::string_view name);

// Exponents q of the moment conditions sum_i c_i n_i^{-q} = 0 that accompany
// sum_i c_i = 1 for K foldings.
std::vector<int> moment_exponents(MpfMode mode, int alpha, int K);

// Leading power of the residual error: alpha + K (regular),
// alpha + 2K - 1 (symmetric), alpha + 2K (dual).
int mitigated_order(MpfMode mode, int alpha, int K);

struct MpfScheme {
  MpfMode mode = MpfMode::Dual;
  int base_order = 1;
  std::vector<int> foldings;
  std::vector<Rational> coefficients;

  int K() const { return static_cast<int>(foldings.size()); }
  int order() const { return mitigated_order(mode, base_order, K()); }
  double l1() const;
};

std::vector<Rational> solve_coefficients(MpfMode mode, int alpha, const std::vector<int>& foldings);
MpfScheme make_scheme(MpfMode mode, int alpha, std::vector<int> foldings);

Rational l1_norm(const std::vector<Rational>& coefficients);
double condition_number(const std::vector<Rational>& coefficients);

struct FoldingSearch {
  MpfMode mode = MpfMode::Dual;
  int alpha = 1;
  int K = 1;
  std::size_t max_cnot = 0;
  FormulaKind base = FormulaKind::Lie1;
  double threshold = 1.25;
  int max_folding = 32;  // candidate foldings are 1..min(n_max(budget), max_folding)
};

struct FoldingSelection {
  MpfScheme scheme;
  std::size_t deepest_cnot = 0;  // CNOTs of the largest-folding circuit
  std::size_t total_cnot = 0;    // summed over every circuit the scheme runs
};

// Largest folding whose circuit fits the budget (0 when none fits).
int max_feasible_folding(const FoldingSearch& search, const HamiltonianSpec& spec);

// Exhaustive search over K-subsets of the feasible foldings: minimum l1,
// then smaller deepest circuit, then lexicographically smallest set.
FoldingSelection select_foldings(const FoldingSearch& search, const HamiltonianSpec& spec);

// Per-folding channel data in ascending folding order; `reversed` is used
// only in dual mode and must then match `forward` in length.
struct ChannelData {
  std::vector<double> forward;
  std::vector<double> reversed;
};

struct MitigatedEstimate {
  double value = 0.0;
  double variance = 0.0;
  int order = 0;
  std::size_t cnot_cost = 0;
};

double mitigate_value(const MpfScheme& scheme, const ChannelData& values);
double estimate_variance(const MpfScheme& scheme, const ChannelData& variances);
MitigatedEstimate mitigate_expectation(const MpfScheme& scheme, const ChannelData& values,
                                       const ChannelData& variances, std::size_t cnot_cost = 0);

// (var_dual / eps_dual^2) / (var_single / eps_single^2)
double shot_cost_ratio(double t, int K, double var_dual, double var_single, double eps_dual,
                       double eps_single);

nlohmann::json to_json(const MpfScheme& scheme);

}  // namespace dcmpf
