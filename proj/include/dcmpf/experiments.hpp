#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dcmpf/analysis.hpp"
#include "dcmpf/pauli.hpp"
#include "dcmpf/state.hpp"

namespace dcmpf {

struct ModelConfig {
  std::string type = "tfim";  // tfim | xxz
  int N = 8;
  double J = 1.0;
  double h = 0.5;
  double delta = 0.0;  // xxz only

  HamiltonianSpec build() const;
};

struct InitialStateConfig {
  std::string type = "neel";  // neel | random
  std::uint64_t seed = 0;

  StateVector build(int n) const;
};

struct ExperimentConfig {
  ModelConfig model;
  double t = 0.0;
  std::string observable = "global_z";  // global_z | even_site_z
  InitialStateConfig initial_state;

  // fig1
  std::vector<int> K;
  int n_mid = 4;
  int displacement = 1;

  // fig2
  std::vector<std::size_t> max_cnot;
  std::vector<int> K_candidates{1, 2, 3, 4};
  double threshold = 1.25;
  std::vector<double> noise;
  int max_folding = 32;

  Observable build_observable() const;
};

// Validates every field before returning.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

using Cell = std::variant<std::string, std::int64_t, double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// Header line, then one line per row; doubles at 17 significant digits.
std::string to_csv(const Table& table);
void emit_csv(const Table& table, const std::filesystem::path& path);

struct MethodFit {
  std::string method;
  FitResult fit;
};

struct Fig1Result {
  Table table;  // method, K, abs_error
  std::vector<MethodFit> fits;
};

// Foldings {n_mid - d (K-1)/2, ..., n_mid + d (K-1)/2} in steps of d.
std::vector<int> centered_foldings(int n_mid, int displacement, int K);

Fig1Result run_fig1(const ExperimentConfig& config);

// Columns: method, p, max_cnot, status, K, foldings, deepest_cnot, l1,
// value, exact, relative_error. Rows whose budget admits no valid scheme carry
// status "infeasible" or "ill_conditioned" and empty numeric fields.
Table run_fig2(const ExperimentConfig& config);

}  // namespace dcmpf
