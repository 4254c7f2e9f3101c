#include "dcmpf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "dcmpf/error.hpp"
#include "dcmpf/exact.hpp"
#include "dcmpf/mpf.hpp"
#include "dcmpf/noise.hpp"
#include "dcmpf/trotter.hpp"

namespace dcmpf {
namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& why) { fail(ErrorCode::Configuration, why); }

template <class T>
T read(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_config(std::string("config field '") + key + "': " + e.what());
  }
}

template <class T>
T require(const json& doc, const char* key) {
  if (!doc.contains(key)) bad_config(std::string("config field '") + key + "' is required");
  return read<T>(doc, key, T{});
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) bad_config(std::string(what) + " must be finite");
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

// Noiseless pure-state expectation of one folded formula.
class PureChannels {
 public:
  PureChannels(const HamiltonianSpec& spec, const StateVector& psi0, const Observable& obs, double t)
      : spec_(spec), psi0_(psi0), obs_(obs), t_(t) {}

  double value(FormulaKind kind, int folds) {
    const auto key = std::make_pair(kind, folds);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    StateVector psi = psi0_;
    apply_plan(psi, lower(kind, spec_, folds), spec_, t_);
    return cache_[key] = expectation(psi, obs_);
  }

 private:
  const HamiltonianSpec& spec_;
  const StateVector& psi0_;
  const Observable& obs_;
  double t_;
  std::map<std::pair<FormulaKind, int>, double> cache_;
};

// Density-matrix expectation of one compiled circuit under CNOT noise.
class NoisyChannels {
 public:
  NoisyChannels(const HamiltonianSpec& spec, const StateVector& psi0, const Observable& obs, double t)
      : spec_(spec), rho0_(DensityMatrix::from_pure(psi0)), obs_(obs), t_(t) {}

  double value(FormulaKind kind, int folds, double p) {
    const auto key = std::make_tuple(kind, folds, p);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const GateList gates = compile_gates(lower(kind, spec_, folds), spec_, t_);
    const DensityMatrix rho = run_noisy(gates, rho0_, NoiseModel(p));
    return cache_[key] = expectation(rho, obs_);
  }

 private:
  const HamiltonianSpec& spec_;
  DensityMatrix rho0_;
  const Observable& obs_;
  double t_;
  std::map<std::tuple<FormulaKind, int, double>, double> cache_;
};

template <class ValueOf>
double combine(const MpfScheme& scheme, FormulaKind base, ValueOf&& value_of) {
  ChannelData data;
  for (int n : scheme.foldings) {
    data.forward.push_back(value_of(base, n));
    if (scheme.mode == MpfMode::Dual) data.reversed.push_back(value_of(reversed_kind(base), n));
  }
  return mitigate_value(scheme, data);
}

struct Selection {
  std::optional<FoldingSelection> chosen;
  std::string status = "ok";
};

// Largest candidate K whose best folding set fits the budget and threshold.
Selection select_largest_k(const ExperimentConfig& config, const HamiltonianSpec& spec, MpfMode mode,
                           int alpha, FormulaKind base, std::size_t budget) {
  std::vector<int> candidates = config.K_candidates;
  std::sort(candidates.rbegin(), candidates.rend());
  Selection out;
  out.status = "infeasible";
  for (int K : candidates) {
    FoldingSearch search{mode, alpha, K, budget, base, config.threshold, config.max_folding};
    try {
      out.chosen = select_foldings(search, spec);
      out.status = "ok";
      break;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::IllConditioned) out.status = "ill_conditioned";
      else if (e.code() != ErrorCode::Infeasible) throw;
    }
  }
  if (out.chosen) {
    const auto& s = *out.chosen;
    if (s.deepest_cnot > budget || s.scheme.l1() > config.threshold) {
      fail(ErrorCode::Invalid, "selected folding set violates its budget or threshold");
    }
  }
  return out;
}

}  // namespace

HamiltonianSpec ModelConfig::build() const {
  if (type == "tfim") return build_tfim(N, J, h);
  if (type == "xxz") return build_xxz(N, J, delta, h);
  bad_config("unknown model type '" + type + "'");
}

StateVector InitialStateConfig::build(int n) const {
  if (type == "neel") return neel_state(n);
  if (type == "random") return random_product_state(n, seed);
  bad_config("unknown initial state '" + type + "'");
}

Observable ExperimentConfig::build_observable() const {
  if (observable == "global_z") return global_z_magnetization(model.N);
  if (observable == "even_site_z") return even_site_z_magnetization(model.N);
  bad_config("unknown observable '" + observable + "'");
}

ExperimentConfig experiment_config_from_json(const json& doc) {
  if (!doc.is_object()) bad_config("config must be a JSON object");
  ExperimentConfig c;
  const json model = require<json>(doc, "model");
  c.model.type = require<std::string>(model, "type");
  c.model.N = require<int>(model, "N");
  c.model.J = read<double>(model, "J", 1.0);
  c.model.h = read<double>(model, "h", 0.0);
  c.model.delta = read<double>(model, "delta", 0.0);
  if (c.model.type != "tfim" && c.model.type != "xxz") bad_config("model.type must be tfim or xxz");
  if (c.model.type == "tfim" && model.contains("delta")) bad_config("model.delta applies only to xxz");
  if (c.model.N < 2 || c.model.N > 14) bad_config("model.N must lie in [2, 14]");
  check_finite(c.model.J, "model.J");
  check_finite(c.model.h, "model.h");
  check_finite(c.model.delta, "model.delta");

  c.t = require<double>(doc, "t");
  if (!(c.t > 0.0) || !std::isfinite(c.t)) bad_config("t must be positive and finite");
  c.observable = read<std::string>(doc, "observable", "global_z");
  if (c.observable != "global_z" && c.observable != "even_site_z") {
    bad_config("observable must be global_z or even_site_z");
  }

  const json init = read<json>(doc, "initial_state", json{{"type", "neel"}});
  c.initial_state.type = read<std::string>(init, "type", "neel");
  c.initial_state.seed = read<std::uint64_t>(init, "seed", 0);
  if (c.initial_state.type != "neel" && c.initial_state.type != "random") {
    bad_config("initial_state.type must be neel or random");
  }

  c.K = read<std::vector<int>>(doc, "K", {});
  for (int K : c.K) {
    if (K < 1) bad_config("K values must be positive");
  }
  c.n_mid = read<int>(doc, "n_mid", 4);
  c.displacement = read<int>(doc, "displacement", 1);
  if (c.n_mid < 1 || c.displacement < 1) bad_config("n_mid and displacement must be positive");

  c.max_cnot = read<std::vector<std::size_t>>(doc, "max_cnot", {});
  c.K_candidates = read<std::vector<int>>(doc, "K_candidates", c.K_candidates);
  for (int K : c.K_candidates) {
    if (K < 1 || K > 8) bad_config("K_candidates must lie in [1, 8]");
  }
  c.threshold = read<double>(doc, "threshold", 1.25);
  if (!(c.threshold >= 1.0) || !std::isfinite(c.threshold)) bad_config("threshold must be >= 1");
  c.noise = read<std::vector<double>>(doc, "noise", {});
  for (double p : c.noise) {
    if (!(p >= 0.0 && p <= 1.0)) bad_config("noise probabilities must lie in [0, 1]");
  }
  c.max_folding = read<int>(doc, "max_folding", 32);
  if (c.max_folding < 1 || c.max_folding > 256) bad_config("max_folding must lie in [1, 256]");
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::Format, "config " + path.string() + ": " + e.what());
  }
  return experiment_config_from_json(doc);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) fail(ErrorCode::Shape, "table row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) {
        out += *s;
      } else if (const auto* n = std::get_if<std::int64_t>(&row[i])) {
        out += std::to_string(*n);
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(row[i]));
        out += buf;
      }
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
  const std::string text = to_csv(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to " + path.string() + " failed");
}

std::vector<int> centered_foldings(int n_mid, int displacement, int K) {
  if (K < 1 || K % 2 == 0) bad_config("centered foldings need an odd K, got " + std::to_string(K));
  std::vector<int> out;
  for (int i = -(K - 1) / 2; i <= (K - 1) / 2; ++i) out.push_back(n_mid + i * displacement);
  if (out.front() < 1) {
    bad_config("K = " + std::to_string(K) + " reaches folding " + std::to_string(out.front()) + " below 1");
  }
  return out;
}

Fig1Result run_fig1(const ExperimentConfig& config) {
  if (config.model.type != "tfim") bad_config("fig1 runs on the tfim model");
  if (config.K.empty()) bad_config("fig1 needs a K list");
  for (int K : config.K) centered_foldings(config.n_mid, config.displacement, K);

  const HamiltonianSpec spec = config.model.build();
  const StateVector psi0 = config.initial_state.build(config.model.N);
  const Observable obs = config.build_observable();
  const double exact = expectation(exact_evolve(spec, psi0, config.t), obs);
  PureChannels channels(spec, psi0, obs, config.t);
  auto value_of = [&](FormulaKind kind, int n) { return channels.value(kind, n); };

  struct Method {
    const char* name;
    MpfMode mode;
    int alpha;
    FormulaKind base;
  };
  const Method methods[] = {{"regular_lie1", MpfMode::Regular, 1, FormulaKind::Lie1},
                            {"dcmpf_lie1", MpfMode::Dual, 1, FormulaKind::Lie1},
                            {"dcmpf_ruth3", MpfMode::Dual, 3, FormulaKind::Ruth3}};

  Fig1Result result;
  result.table.header = {"method", "K", "abs_error"};
  for (const auto& m : methods) {
    std::vector<std::pair<int, double>> points;
    for (int K : config.K) {
      const auto scheme = make_scheme(m.mode, m.alpha, centered_foldings(config.n_mid, config.displacement, K));
      const double err = std::abs(combine(scheme, m.base, value_of) - exact);
      result.table.rows.push_back({std::string(m.name), std::int64_t{K}, err});
      points.emplace_back(K, err);
    }
    const double ratio = config.t / config.n_mid;
    const bool fittable = points.size() >= 2 && ratio < 1.0 &&
                          std::all_of(points.begin(), points.end(), [](const auto& p) { return p.second > 0.0; });
    if (fittable) result.fits.push_back({m.name, fit_error_exponent(points, ratio)});
  }
  return result;
}

Table run_fig2(const ExperimentConfig& config) {
  if (config.model.type != "xxz") bad_config("fig2 runs on the xxz model");
  if (config.initial_state.type != "neel") bad_config("fig2 starts from the Neel state");
  if (config.max_cnot.empty() || config.noise.empty()) bad_config("fig2 needs max_cnot and noise lists");

  const HamiltonianSpec spec = config.model.build();
  const StateVector psi0 = config.initial_state.build(config.model.N);
  const Observable obs = config.build_observable();
  const double exact = expectation(exact_evolve(spec, psi0, config.t), obs);
  if (std::abs(exact) < 1e-12) fail(ErrorCode::Domain, "exact observable vanishes; relative error undefined");
  NoisyChannels channels(spec, psi0, obs, config.t);

  Table table;
  table.header = {"method", "p", "max_cnot", "status", "K", "foldings", "deepest_cnot",
                  "l1", "value", "exact", "relative_error"};
  const std::string blank;

  for (std::size_t budget : config.max_cnot) {
    const Selection dual = select_largest_k(config, spec, MpfMode::Dual, 1, FormulaKind::Lie1, budget);
    const Selection sym = select_largest_k(config, spec, MpfMode::Symmetric, 2, FormulaKind::Suzuki2, budget);
    FoldingSearch plain{MpfMode::Symmetric, 2, 1, budget, FormulaKind::Suzuki2, config.threshold, config.max_folding};
    const int n_plain = max_feasible_folding(plain, spec);

    for (double p : config.noise) {
      auto value_of = [&](FormulaKind kind, int n) { return channels.value(kind, n, p); };
      auto emit = [&](const char* method, const Selection& sel, FormulaKind base) {
        std::vector<Cell> row{std::string(method), p, static_cast<std::int64_t>(budget), sel.status};
        if (!sel.chosen) {
          row.insert(row.end(), {blank, blank, blank, blank, blank, exact, blank});
        } else {
          const auto& s = *sel.chosen;
          const double value = combine(s.scheme, base, value_of);
          row.insert(row.end(), {std::int64_t{s.scheme.K()}, join(s.scheme.foldings),
                                 static_cast<std::int64_t>(s.deepest_cnot), s.scheme.l1(), value, exact,
                                 std::abs(value - exact) / std::abs(exact)});
        }
        table.rows.push_back(std::move(row));
      };
      emit("dcmpf_lie1", dual, FormulaKind::Lie1);
      emit("mpf_suzuki2", sym, FormulaKind::Suzuki2);

      Selection single;
      if (n_plain >= 1) {
        FoldingSelection s;
        s.scheme = make_scheme(MpfMode::Symmetric, 2, {n_plain});
        s.deepest_cnot = cnot_count(lower(FormulaKind::Suzuki2, spec, n_plain), spec);
        s.total_cnot = s.deepest_cnot;
        single.chosen = s;
      } else {
        single.status = "infeasible";
      }
      emit("suzuki2", single, FormulaKind::Suzuki2);
    }
  }
  return table;
}

}  // namespace dcmpf
