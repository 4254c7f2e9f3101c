#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dcmpf/error.hpp"
#include "dcmpf/exact.hpp"
#include "dcmpf/experiments.hpp"
#include "dcmpf/mpf.hpp"

using namespace dcmpf;
using nlohmann::json;

namespace {

json fig1_doc() {
  return json::parse(R"({
    "model": {"type": "tfim", "N": 6, "J": 1.0, "h": 0.5},
    "t": 0.8, "observable": "global_z",
    "initial_state": {"type": "random", "seed": 42},
    "n_mid": 4, "displacement": 1, "K": [1, 3, 5]
  })");
}

json fig2_doc() {
  return json::parse(R"({
    "model": {"type": "xxz", "N": 4, "J": 1.0, "delta": -1.5, "h": 0.1},
    "t": 0.3, "observable": "even_site_z",
    "initial_state": {"type": "neel"},
    "max_cnot": [18, 36, 72, 108],
    "K_candidates": [1, 2, 3],
    "threshold": 1.25,
    "noise": [0.0, 1e-6],
    "max_folding": 12
  })");
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode config_error(const json& doc) {
  try {
    experiment_config_from_json(doc);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST(ExperimentConfig, Parses) {
  const auto c = experiment_config_from_json(fig2_doc());
  EXPECT_EQ(c.model.type, "xxz");
  EXPECT_EQ(c.model.N, 4);
  EXPECT_DOUBLE_EQ(c.model.delta, -1.5);
  EXPECT_EQ(c.max_cnot, (std::vector<std::size_t>{18, 36, 72, 108}));
  EXPECT_EQ(c.noise.size(), 2u);
  EXPECT_EQ(c.max_folding, 12);
  const auto f = experiment_config_from_json(fig1_doc());
  EXPECT_EQ(f.initial_state.type, "random");
  EXPECT_EQ(f.initial_state.seed, 42u);
}

TEST(ExperimentConfig, Validation) {
  auto with = [](json doc, const json::json_pointer& ptr, json value) {
    doc[ptr] = std::move(value);
    return doc;
  };
  EXPECT_EQ(config_error(with(fig1_doc(), "/model/type"_json_pointer, "heisenberg")), ErrorCode::Configuration);
  EXPECT_EQ(config_error(with(fig1_doc(), "/model/N"_json_pointer, 40)), ErrorCode::Configuration);
  EXPECT_EQ(config_error(with(fig1_doc(), "/t"_json_pointer, -1.0)), ErrorCode::Configuration);
  EXPECT_EQ(config_error(with(fig1_doc(), "/t"_json_pointer, "soon")), ErrorCode::Configuration);
  EXPECT_EQ(config_error(with(fig1_doc(), "/observable"_json_pointer, "energy")), ErrorCode::Configuration);
  EXPECT_EQ(config_error(with(fig2_doc(), "/noise"_json_pointer, json{0.1, 2.0})), ErrorCode::Configuration);
  EXPECT_EQ(config_error(with(fig2_doc(), "/threshold"_json_pointer, 0.5)), ErrorCode::Configuration);
  json missing = fig1_doc();
  missing.erase("model");
  EXPECT_EQ(config_error(missing), ErrorCode::Configuration);
  EXPECT_EQ(config_error(json::array()), ErrorCode::Configuration);
}

TEST(CenteredFoldings, Layout) {
  EXPECT_EQ(centered_foldings(4, 1, 1), (std::vector<int>{4}));
  EXPECT_EQ(centered_foldings(4, 1, 7), (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(centered_foldings(6, 2, 3), (std::vector<int>{4, 6, 8}));
  EXPECT_THROW(centered_foldings(4, 1, 2), Error);
  EXPECT_THROW(centered_foldings(2, 1, 5), Error);
}

TEST(RunFig1, KOneMatchesDirectSimulation) {
  auto doc = fig1_doc();
  doc["K"] = {1};
  const auto config = experiment_config_from_json(doc);
  const auto result = run_fig1(config);
  ASSERT_EQ(result.table.rows.size(), 3u);

  const auto spec = build_tfim(6, 1.0, 0.5);
  const auto psi0 = random_product_state(6, 42);
  const auto obs = global_z_magnetization(6);
  const double exact = expectation(exact_evolve(spec, psi0, 0.8), obs);
  auto direct = [&](FormulaKind kind) {
    auto psi = psi0;
    apply_plan(psi, lower(kind, spec, 4), spec, 0.8);
    return expectation(psi, obs);
  };
  const double lie = direct(FormulaKind::Lie1), lie_rev = direct(FormulaKind::Lie1Reversed);
  const double ruth = direct(FormulaKind::Ruth3), ruth_rev = direct(FormulaKind::Ruth3Reversed);
  EXPECT_NEAR(std::get<double>(result.table.rows[0][2]), std::abs(lie - exact), 1e-12);
  EXPECT_NEAR(std::get<double>(result.table.rows[1][2]), std::abs(0.5 * (lie + lie_rev) - exact), 1e-12);
  EXPECT_NEAR(std::get<double>(result.table.rows[2][2]), std::abs(0.5 * (ruth + ruth_rev) - exact), 1e-12);
  EXPECT_TRUE(result.fits.empty());
}

TEST(RunFig1, SingleGroupModelRejected) {
  auto doc = fig1_doc();
  doc["model"]["h"] = 0.0;
  try {
    run_fig1(experiment_config_from_json(doc));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Configuration);  // ruth3 needs two groups
  }
}

TEST(RunFig1, RejectsEvenKAndWrongModel) {
  auto doc = fig1_doc();
  doc["K"] = {1, 2};
  try {
    run_fig1(experiment_config_from_json(doc));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Configuration);
  }
  EXPECT_THROW(run_fig1(experiment_config_from_json(fig2_doc())), Error);
}

TEST(RunFig1, ErrorsShrinkWithK) {
  const auto result = run_fig1(experiment_config_from_json(fig1_doc()));
  ASSERT_EQ(result.table.rows.size(), 9u);
  ASSERT_EQ(result.fits.size(), 3u);
  for (std::size_t m = 0; m < 3; ++m) {
    EXPECT_GT(std::get<double>(result.table.rows[3 * m][2]), std::get<double>(result.table.rows[3 * m + 2][2]));
    EXPECT_GT(result.fits[m].fit.c2, 0.0);
  }
}

TEST(RunFig2, RowsRespectBudgetAndThreshold) {
  const auto config = experiment_config_from_json(fig2_doc());
  const auto table = run_fig2(config);
  ASSERT_EQ(table.rows.size(), config.max_cnot.size() * config.noise.size() * 3);
  bool saw_infeasible = false;
  for (const auto& row : table.rows) {
    const auto& status = std::get<std::string>(row[3]);
    if (status != "ok") {
      saw_infeasible = true;
      EXPECT_EQ(std::get<std::string>(row[10]), "");
      continue;
    }
    const auto budget = static_cast<std::size_t>(std::get<std::int64_t>(row[2]));
    EXPECT_LE(static_cast<std::size_t>(std::get<std::int64_t>(row[6])), budget);
    EXPECT_LE(std::get<double>(row[7]), config.threshold);
    EXPECT_GE(std::get<double>(row[10]), 0.0);
  }
  EXPECT_TRUE(saw_infeasible);  // one suzuki2 fold of 3 bonds needs 36 CNOTs
}

TEST(RunFig2, NoiselessDcmpfBeatsSuzuki2) {
  const auto table = run_fig2(experiment_config_from_json(fig2_doc()));
  int compared = 0;
  for (std::size_t i = 0; i + 2 < table.rows.size(); i += 3) {
    if (std::get<double>(table.rows[i][1]) != 0.0) continue;
    if (std::get<std::string>(table.rows[i][3]) != "ok" || std::get<std::string>(table.rows[i + 2][3]) != "ok") continue;
    if (std::get<std::int64_t>(table.rows[i][6]) != std::get<std::int64_t>(table.rows[i + 2][6])) continue;
    ++compared;
    EXPECT_LT(std::get<double>(table.rows[i][10]), std::get<double>(table.rows[i + 2][10]));
  }
  EXPECT_GE(compared, 2);
}

TEST(Csv, FormatAndDeterminism) {
  Table empty{{"method", "K", "abs_error"}, {}};
  EXPECT_EQ(to_csv(empty), "method,K,abs_error\n");
  Table one{{"a", "b", "c"}, {{std::string("x"), std::int64_t{3}, 0.1}}};
  EXPECT_EQ(to_csv(one), "a,b,c\nx,3,0.10000000000000001\n");
  Table bad{{"a"}, {{std::string("x"), 1.0}}};
  EXPECT_THROW(to_csv(bad), Error);

  const auto dir = std::filesystem::temp_directory_path();
  const auto p1 = dir / "dcmpf_fig1_a.csv", p2 = dir / "dcmpf_fig1_b.csv";
  const auto config = experiment_config_from_json(fig1_doc());
  emit_csv(run_fig1(config).table, p1);
  emit_csv(run_fig1(config).table, p2);
  EXPECT_EQ(slurp(p1), slurp(p2));
  EXPECT_EQ(slurp(p1).substr(0, 19), "method,K,abs_error\n");
  emit_csv(empty, p1);
  EXPECT_EQ(slurp(p1), "method,K,abs_error\n");
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);

  try {
    emit_csv(empty, "/nonexistent_dir_dcmpf/out.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}
