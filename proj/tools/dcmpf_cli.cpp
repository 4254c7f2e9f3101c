#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcmpf/analysis.hpp"
#include "dcmpf/error.hpp"
#include "dcmpf/experiments.hpp"
#include "dcmpf/mpf.hpp"

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) dcmpf::fail(dcmpf::ErrorCode::Io, "cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    dcmpf::fail(dcmpf::ErrorCode::Format, "config " + path + ": " + e.what());
  }
}

void write_or_print(const dcmpf::Table& table, const std::string& out) {
  if (out.empty()) {
    std::cout << dcmpf::to_csv(table);
  } else {
    dcmpf::emit_csv(table, out);
  }
}

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;

  // coeffs
  std::string mode = "dual";
  int alpha = 1;
  std::vector<int> foldings;
};

void run_coeffs(const Options& opt) {
  std::string mode = opt.mode;
  int alpha = opt.alpha;
  std::vector<int> foldings = opt.foldings;
  if (!opt.config.empty()) {
    const json doc = load_json(opt.config);
    try {
      mode = doc.value("mode", mode);
      alpha = doc.value("alpha", alpha);
      foldings = doc.value("foldings", foldings);
    } catch (const json::exception& e) {
      dcmpf::fail(dcmpf::ErrorCode::Configuration, e.what());
    }
  }
  const auto scheme = dcmpf::make_scheme(dcmpf::mpf_mode_from_string(mode), alpha, foldings);
  std::cout << dcmpf::to_json(scheme).dump() << '\n';
  if (!opt.out.empty()) {
    dcmpf::Table table{{"folding", "num", "den", "value"}, {}};
    for (std::size_t i = 0; i < scheme.foldings.size(); ++i) {
      const auto& c = scheme.coefficients[i];
      table.rows.push_back({std::int64_t{scheme.foldings[i]}, c.get_num().get_str(), c.get_den().get_str(),
                            c.get_d()});
    }
    dcmpf::emit_csv(table, opt.out);
  }
}

// {"model": {...}, "t_grid": [...], "norm": "spectral",
//  "targets": [{"formula": "lie1", "folds": 1} |
//              {"mode": "dual", "alpha": 1, "foldings": [1, 2], "base": "lie1"}]}
void run_order(const Options& opt) {
  if (opt.config.empty()) dcmpf::fail(dcmpf::ErrorCode::Configuration, "order needs --config");
  const json doc = load_json(opt.config);
  dcmpf::Table table{{"target", "slope"}, {}};
  try {
    const json& m = doc.at("model");
    dcmpf::ModelConfig model;
    model.type = m.at("type").get<std::string>();
    model.N = m.at("N").get<int>();
    model.J = m.value("J", 1.0);
    model.h = m.value("h", 0.0);
    model.delta = m.value("delta", 0.0);
    const auto spec = model.build();
    const auto grid = doc.value("t_grid", dcmpf::kDefaultOrderGrid);
    const auto norm_name = doc.value("norm", std::string("spectral"));
    if (norm_name != "spectral" && norm_name != "frobenius") {
      dcmpf::fail(dcmpf::ErrorCode::Configuration, "norm must be spectral or frobenius");
    }
    const auto norm = norm_name == "spectral" ? dcmpf::OperatorNorm::Spectral : dcmpf::OperatorNorm::Frobenius;
    for (const json& target : doc.at("targets")) {
      dcmpf::OperatorBuilder builder;
      std::string label;
      if (target.contains("formula")) {
        const auto kind = dcmpf::formula_kind_from_string(target.at("formula").get<std::string>());
        builder = dcmpf::formula_builder(kind, spec, target.value("folds", 1));
        label = target.at("formula").get<std::string>();
      } else {
        const auto scheme = dcmpf::make_scheme(dcmpf::mpf_mode_from_string(target.at("mode").get<std::string>()),
                                               target.at("alpha").get<int>(),
                                               target.at("foldings").get<std::vector<int>>());
        const auto base = dcmpf::formula_kind_from_string(target.value("base", std::string("lie1")));
        builder = dcmpf::scheme_builder(scheme, base, spec);
        label = std::string(dcmpf::to_string(scheme.mode)) + "_" + std::string(dcmpf::to_string(base)) + "_K" +
                std::to_string(scheme.K());
      }
      table.rows.push_back({label, dcmpf::estimate_operator_order(builder, spec, grid, norm)});
    }
  } catch (const json::exception& e) {
    dcmpf::fail(dcmpf::ErrorCode::Configuration, e.what());
  }
  write_or_print(table, opt.out);
}

dcmpf::ExperimentConfig experiment_config(const Options& opt) {
  if (opt.config.empty()) dcmpf::fail(dcmpf::ErrorCode::Configuration, "--config is required");
  auto config = dcmpf::load_experiment_config(opt.config);
  if (opt.seed) config.initial_state.seed = *opt.seed;
  return config;
}

void run_fig1(const Options& opt) {
  const auto result = dcmpf::run_fig1(experiment_config(opt));
  write_or_print(result.table, opt.out);
  for (const auto& f : result.fits) {
    std::printf("fit %s c1=%.6g c2=%.6f residual=%.3g\n", f.method.c_str(), f.fit.c1, f.fit.c2, f.fit.residual);
  }
}

void run_fig2(const Options& opt) { write_or_print(dcmpf::run_fig2(experiment_config(opt)), opt.out); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-channel multi-product formula toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration file");
    sub->add_option("--out", opt.out, "CSV output path (stdout when omitted)");
    sub->add_option("--seed", opt.seed, "Seed for the random initial state");
  };

  auto* coeffs = app.add_subcommand("coeffs", "Solve MPF coefficients exactly");
  common(coeffs);
  coeffs->add_option("--mode", opt.mode, "regular | symmetric | dual");
  coeffs->add_option("--alpha", opt.alpha, "Order of the base formula");
  coeffs->add_option("--foldings", opt.foldings, "Folding numbers")->delimiter(',');

  auto* order = app.add_subcommand("order", "Estimate operator-error orders");
  common(order);
  auto* fig1 = app.add_subcommand("fig1", "Error-exponent experiment on the TFIM");
  common(fig1);
  auto* fig2 = app.add_subcommand("fig2", "Noisy XXZ experiment under CNOT budgets");
  common(fig2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: input: %s\n", e.what());
    return 2;
  }

  try {
    if (*coeffs) run_coeffs(opt);
    if (*order) run_order(opt);
    if (*fig1) run_fig1(opt);
    if (*fig2) run_fig2(opt);
  } catch (const dcmpf::Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", std::string(dcmpf::to_string(e.code())).c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 1;
  }
  return 0;
}
