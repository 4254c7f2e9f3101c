#include "dcmpf/mpf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "dcmpf/error.hpp"

namespace dcmpf {
namespace {

void check_foldings(const std::vector<int>& foldings) {
  if (foldings.empty()) fail(ErrorCode::Invalid, "at least one folding is required");
  for (int n : foldings) {
    if (n < 1) fail(ErrorCode::Invalid, "foldings must be positive");
  }
  std::vector<int> sorted = foldings;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::SingularSystem, "duplicate foldings make the coefficient system singular");
  }
}

void check_mode(MpfMode mode, int alpha) {
  if (alpha < 1) fail(ErrorCode::Mode, "base order must be >= 1");
  if (mode == MpfMode::Dual && alpha % 2 == 0) {
    fail(ErrorCode::Mode, "dual mode needs an odd-order (regular) base formula");
  }
  if (mode == MpfMode::Symmetric && alpha % 2 != 0) {
    fail(ErrorCode::Mode, "symmetric mode needs an even-order base formula");
  }
}

void check_arity(const MpfScheme& scheme, const ChannelData& data) {
  const std::size_t K = scheme.foldings.size();
  if (data.forward.size() != K) fail(ErrorCode::Input, "one forward channel value per folding required");
  if (scheme.mode == MpfMode::Dual) {
    if (data.reversed.size() != K) fail(ErrorCode::Input, "dual mode needs a reversed channel per folding");
  } else if (!data.reversed.empty()) {
    fail(ErrorCode::Input, "reversed channels are only meaningful in dual mode");
  }
}

Integer power(int base, int exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

// Visits every K-subset of {1..n_max} in lexicographic order.
template <class Visit>
void for_each_subset(int n_max, int K, Visit&& visit) {
  std::vector<int> subset(static_cast<std::size_t>(K));
  std::iota(subset.begin(), subset.end(), 1);
  while (true) {
    visit(subset);
    int i = K - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n_max - (K - 1 - i)) --i;
    if (i < 0) return;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < K; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::size_t circuit_cnots(const FoldingSearch& search, const HamiltonianSpec& spec, int n) {
  return cnot_count(lower(search.base, spec, n), spec);
}

}  // namespace

std::string_view to_string(MpfMode mode) {
  switch (mode) {
    case MpfMode::Regular: return "regular";
    case MpfMode::Symmetric: return "symmetric";
    case MpfMode::Dual: return "dual";
  }
  return "unknown";
}

MpfMode mpf_mode_from_string(std::string_view name) {
  for (MpfMode mode : {MpfMode::Regular, MpfMode::Symmetric, MpfMode::Dual}) {
    if (to_string(mode) == name) return mode;
  }
  fail(ErrorCode::Mode, "unknown MPF mode '" + std::string(name) + "'");
}

std::vector<int> moment_exponents(MpfMode mode, int alpha, int K) {
  check_mode(mode, alpha);
  std::vector<int> q;
  for (int m = 0; m + 1 < K; ++m) {
    switch (mode) {
      case MpfMode::Regular: q.push_back(alpha + m); break;
      case MpfMode::Symmetric: q.push_back(alpha + 2 * m); break;
      case MpfMode::Dual: q.push_back(alpha + 1 + 2 * m); break;
    }
  }
  return q;
}

int mitigated_order(MpfMode mode, int alpha, int K) {
  switch (mode) {
    case MpfMode::Regular: return alpha + K;
    case MpfMode::Symmetric: return alpha + 2 * K - 1;
    case MpfMode::Dual: return alpha + 2 * K;
  }
  return 0;
}

std::vector<Rational> solve_coefficients(MpfMode mode, int alpha, const std::vector<int>& foldings) {
  check_mode(mode, alpha);
  check_foldings(foldings);
  const int K = static_cast<int>(foldings.size());
  std::vector<int> rows{0};
  const auto q = moment_exponents(mode, alpha, K);
  rows.insert(rows.end(), q.begin(), q.end());
  const int q_max = rows.back();

  // With c_i = n_i^{q_max} d_i, row q reads sum_i n_i^{q_max - q} d_i, an
  // integer system.
  std::vector<std::vector<Integer>> matrix(rows.size(), std::vector<Integer>(foldings.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < foldings.size(); ++i) matrix[r][i] = power(foldings[i], q_max - rows[r]);
  }
  std::vector<Integer> rhs(rows.size(), 0);
  rhs[0] = 1;
  auto d = solve_integer_system(std::move(matrix), std::move(rhs));
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] *= Rational(power(foldings[i], q_max));
    d[i].canonicalize();
  }
  return d;
}

MpfScheme make_scheme(MpfMode mode, int alpha, std::vector<int> foldings) {
  std::sort(foldings.begin(), foldings.end());
  auto coefficients = solve_coefficients(mode, alpha, foldings);
  return {mode, alpha, std::move(foldings), std::move(coefficients)};
}

Rational l1_norm(const std::vector<Rational>& coefficients) {
  Rational total = 0;
  for (const auto& c : coefficients) total += abs(c);
  return total;
}

double condition_number(const std::vector<Rational>& coefficients) {
  if (coefficients.empty()) fail(ErrorCode::Invalid, "condition number of an empty coefficient set");
  return l1_norm(coefficients).get_d();
}

double MpfScheme::l1() const { return condition_number(coefficients); }

int max_feasible_folding(const FoldingSearch& search, const HamiltonianSpec& spec) {
  int n_max = 0;
  for (int n = 1; n <= search.max_folding; ++n) {
    if (circuit_cnots(search, spec, n) > search.max_cnot) break;
    n_max = n;
  }
  return n_max;
}

FoldingSelection select_foldings(const FoldingSearch& search, const HamiltonianSpec& spec) {
  if (search.K < 1) fail(ErrorCode::Invalid, "K must be >= 1");
  check_mode(search.mode, search.alpha);
  const int n_max = max_feasible_folding(search, spec);
  if (n_max < search.K) {
    fail(ErrorCode::Infeasible, "no " + std::to_string(search.K) + "-subset of foldings fits " +
                                    std::to_string(search.max_cnot) + " CNOTs");
  }

  struct Best {
    Rational l1;
    std::vector<int> foldings;
    std::vector<Rational> coefficients;
  };
  std::optional<Best> best;
  for_each_subset(n_max, search.K, [&](const std::vector<int>& subset) {
    auto coefficients = solve_coefficients(search.mode, search.alpha, subset);
    Rational l1 = l1_norm(coefficients);
    // Lexicographic enumeration: a later subset only wins on strictly smaller
    // l1, or equal l1 with a smaller deepest folding.
    if (!best || l1 < best->l1 || (l1 == best->l1 && subset.back() < best->foldings.back())) {
      best = Best{std::move(l1), subset, std::move(coefficients)};
    }
  });

  if (best->l1 > Rational(search.threshold)) {
    fail(ErrorCode::IllConditioned, "minimum l1 norm " + std::to_string(best->l1.get_d()) +
                                        " exceeds threshold " + std::to_string(search.threshold));
  }

  FoldingSelection out;
  out.scheme = MpfScheme{search.mode, search.alpha, best->foldings, std::move(best->coefficients)};
  const std::size_t channels = search.mode == MpfMode::Dual ? 2 : 1;
  for (int n : out.scheme.foldings) {
    const std::size_t cost = circuit_cnots(search, spec, n);
    out.deepest_cnot = std::max(out.deepest_cnot, cost);
    out.total_cnot += channels * cost;
  }
  return out;
}

double mitigate_value(const MpfScheme& scheme, const ChannelData& values) {
  check_arity(scheme, values);
  double total = 0.0;
  for (std::size_t i = 0; i < scheme.foldings.size(); ++i) {
    const double c = scheme.coefficients[i].get_d();
    const double channel = scheme.mode == MpfMode::Dual
                               ? 0.5 * (values.forward[i] + values.reversed[i])
                               : values.forward[i];
    total += c * channel;
  }
  return total;
}

double estimate_variance(const MpfScheme& scheme, const ChannelData& variances) {
  check_arity(scheme, variances);
  auto check = [](double v) {
    if (!(v >= 0.0)) fail(ErrorCode::Input, "channel variances must be non-negative");
  };
  double total = 0.0;
  for (std::size_t i = 0; i < scheme.foldings.size(); ++i) {
    const double c = scheme.coefficients[i].get_d();
    check(variances.forward[i]);
    if (scheme.mode == MpfMode::Dual) {
      check(variances.reversed[i]);
      total += 0.25 * c * c * (variances.forward[i] + variances.reversed[i]);
    } else {
      total += c * c * variances.forward[i];
    }
  }
  return total;
}

MitigatedEstimate mitigate_expectation(const MpfScheme& scheme, const ChannelData& values,
                                       const ChannelData& variances, std::size_t cnot_cost) {
  return {mitigate_value(scheme, values), estimate_variance(scheme, variances), scheme.order(), cnot_cost};
}

double shot_cost_ratio(double t, int K, double var_dual, double var_single, double eps_dual,
                       double eps_single) {
  if (!(t > 0.0) || K < 1) fail(ErrorCode::Input, "t and K must be positive");
  if (!(eps_dual > 0.0) || !(eps_single > 0.0)) fail(ErrorCode::Input, "precisions must be positive");
  if (!(var_dual > 0.0) || !(var_single > 0.0)) fail(ErrorCode::Input, "variances must be positive");
  return (var_dual / (eps_dual * eps_dual)) / (var_single / (eps_single * eps_single));
}

nlohmann::json to_json(const MpfScheme& scheme) {
  nlohmann::json coefficients = nlohmann::json::array();
  for (const auto& c : scheme.coefficients) {
    if (!c.get_num().fits_slong_p() || !c.get_den().fits_slong_p()) {
      fail(ErrorCode::Resource, "coefficient " + c.get_str() + " does not fit a 64-bit JSON integer");
    }
    coefficients.push_back({{"num", c.get_num().get_si()}, {"den", c.get_den().get_si()}});
  }
  return {{"mode", to_string(scheme.mode)},
          {"alpha", scheme.base_order},
          {"foldings", scheme.foldings},
          {"coefficients", coefficients},
          {"l1", scheme.l1()}};
}

}  // namespace dcmpf
