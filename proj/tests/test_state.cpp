#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "dcmpf/error.hpp"
#include "dcmpf/exact.hpp"
#include "dcmpf/state.hpp"
#include "oracle.hpp"

using namespace dcmpf;

namespace {

Eigen::VectorXcd as_vector(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
  for (std::uint64_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

StateVector random_state(int n, std::mt19937_64& rng) {
  const auto v = oracle::random_vector(rng, Eigen::Index{1} << n);
  return StateVector(n, std::vector<cplx>(v.data(), v.data() + v.size()));
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("dcmpf_test_" + name);
}

}  // namespace

TEST(Rotation, Examples) {
  const double theta = 0.37;
  StateVector zero(1);
  apply_pauli_rotation(zero, PauliWord("Z"), theta);
  EXPECT_LT(std::abs(zero[0] - std::polar(1.0, -theta)), 1e-15);

  StateVector x(1);
  apply_pauli_rotation(x, PauliWord("X"), theta);
  EXPECT_LT(std::abs(x[0] - std::cos(theta)), 1e-15);
  EXPECT_LT(std::abs(x[1] - cplx(0, -std::sin(theta))), 1e-15);

  // |01>: site 1 up, site 2 down
  auto s = StateVector::basis(2, 0b10);
  apply_pauli_rotation(s, PauliWord("ZZ"), theta);
  EXPECT_LT(std::abs(s[0b10] - std::polar(1.0, theta)), 1e-15);

  EXPECT_THROW(apply_pauli_rotation(s, PauliWord("Z"), theta), Error);
}

TEST(Expectation, Examples) {
  EXPECT_DOUBLE_EQ(expectation(StateVector(1), global_z_magnetization(1)), 1.0);
  EXPECT_NEAR(expectation(DensityMatrix::maximally_mixed(1), global_z_magnetization(1)), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(expectation(neel_state(8), even_site_z_magnetization(8)), 1.0);
  EXPECT_DOUBLE_EQ(expectation(neel_state(8), global_z_magnetization(8)), 0.0);
  EXPECT_THROW(expectation(StateVector(2), global_z_magnetization(3)), Error);
}

TEST(Expectation, MatchesDenseOracle) {
  std::mt19937_64 rng(3);
  const auto psi = random_state(5, rng);
  const auto spec = build_xxz(5, 0.8, -1.3, 0.4);
  const auto obs = observable_from(spec);
  std::vector<oracle::Term> terms;
  for (const auto& t : spec.terms()) terms.push_back({t.coeff, t.word.letters()});
  const auto v = as_vector(psi);
  EXPECT_NEAR(expectation(psi, obs), v.dot(oracle::hamiltonian(terms) * v).real(), 1e-12);
  EXPECT_NEAR(expectation(DensityMatrix::from_pure(psi), obs), expectation(psi, obs), 1e-12);
}

TEST(NeelState, Layout) {
  EXPECT_EQ(std::abs(neel_state(1)[1]), 1.0);
  EXPECT_EQ(std::abs(neel_state(2)[0b01]), 1.0);
  EXPECT_EQ(std::abs(neel_state(8)[0x55]), 1.0);
  EXPECT_DOUBLE_EQ(neel_state(8).norm(), 1.0);
}

TEST(RandomProductState, DeterministicNormalizedProduct) {
  const auto a = random_product_state(6, 99);
  const auto b = random_product_state(6, 99);
  EXPECT_TRUE(std::equal(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin()));
  EXPECT_NEAR(random_product_state(1, 5).norm(), 1.0, 1e-15);
  EXPECT_NEAR(a.norm(), 1.0, 1e-14);
  // Every two-site reduced state is pure.
  const int n = 6;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
      for (std::uint64_t k = 0; k < a.dim(); ++k) {
        for (std::uint64_t l = 0; l < a.dim(); ++l) {
          const std::uint64_t rest = ~((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
          if ((k & rest) != (l & rest)) continue;
          const int rk = static_cast<int>(((k >> i) & 1) | (((k >> j) & 1) << 1));
          const int rl = static_cast<int>(((l >> i) & 1) | (((l >> j) & 1) << 1));
          r(rk, rl) += a[k] * std::conj(a[l]);
        }
      }
      EXPECT_NEAR((r * r).trace().real(), 1.0, 1e-10);
    }
  }
  EXPECT_NE(random_product_state(4, 1)[3], random_product_state(4, 2)[3]);
}

TEST(ExactEvolve, Examples) {
  const double h = 0.7;
  HamiltonianSpec rabi(1, {{h, PauliWord("X")}});
  for (double t : {0.1, 0.6, 2.3}) {
    const auto psi = exact_evolve(rabi, StateVector(1), t);
    EXPECT_NEAR(expectation(psi, global_z_magnetization(1)), std::cos(2 * h * t), 1e-12);
  }
  std::mt19937_64 rng(1);
  const auto psi = random_state(3, rng);
  const auto same = exact_evolve(build_tfim(3, 1, 0.5), psi, 0.0);
  for (std::uint64_t i = 0; i < psi.dim(); ++i) EXPECT_LT(std::abs(same[i] - psi[i]), 1e-13);

  const auto phased = exact_evolve(build_tfim(2, 1, 0), StateVector::basis(2, 0b10), 0.9);
  EXPECT_LT(std::abs(phased[0b10] - std::polar(1.0, -0.9)), 1e-12);
  EXPECT_NEAR(expectation(phased, site_z_average(2, {0})), 1.0, 1e-12);

  EXPECT_THROW(exact_evolve(build_tfim(13, 1, 1), StateVector(13), 0.1), Error);
}

TEST(ExactEvolve, MatchesMatrixExponential) {
  const auto spec = build_xxz(4, 1.0, -1.5, 0.1);
  std::vector<oracle::Term> terms;
  for (const auto& t : spec.terms()) terms.push_back({t.coeff, t.word.letters()});
  const ExactEvolver evolver(spec);
  for (double t : {0.05, 0.3, 1.7}) {
    const auto u = evolver.propagator(t);
    EXPECT_LT((u - oracle::expm_i(oracle::hamiltonian(terms), t)).norm(), 1e-11);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(16, 16)).norm(), 1e-12);
  }
}

TEST(ExactEvolve, EnergyConserved) {
  const auto spec = build_tfim(6, 1.0, 0.5);
  const auto obs = observable_from(spec);
  const auto psi = random_product_state(6, 17);
  const double e0 = expectation(psi, obs);
  for (double t : {0.1, 0.5, 1.0}) EXPECT_NEAR(expectation(exact_evolve(spec, psi, t), obs), e0, 1e-9);
}

TEST(ExactEvolve, SingleTermMatchesRotation) {
  HamiltonianSpec one(3, {{0.8, PauliWord("XZY")}});
  std::mt19937_64 rng(8);
  auto psi = random_state(3, rng);
  const auto exact = exact_evolve(one, psi, 0.45);
  apply_pauli_rotation(psi, PauliWord("XZY"), 0.8 * 0.45);
  for (std::uint64_t i = 0; i < psi.dim(); ++i) EXPECT_LT(std::abs(psi[i] - exact[i]), 1e-10);
}

TEST(DensityMatrix, RotationPreservesTraceAndHermiticity) {
  std::mt19937_64 rng(4);
  auto rho = DensityMatrix::from_pure(random_state(4, rng));
  for (const char* w : {"XYII", "IZZI", "YIIY", "IIXZ"}) apply_pauli_rotation(rho, PauliWord(w), 0.31);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
  EXPECT_NEAR(rho.trace().imag(), 0.0, 1e-10);
  EXPECT_LT(rho.hermiticity_defect(), 1e-10);
  EXPECT_GT(rho.min_eigenvalue(), -1e-10);
}

TEST(DensityMatrix, RotationMatchesConjugation) {
  std::mt19937_64 rng(6);
  const auto psi = random_state(3, rng);
  auto rho = DensityMatrix::from_pure(psi);
  auto evolved = psi;
  for (const char* w : {"XYI", "ZIZ", "IYX"}) {
    apply_pauli_rotation(rho, PauliWord(w), -0.7);
    apply_pauli_rotation(evolved, PauliWord(w), -0.7);
  }
  const auto v = as_vector(evolved);
  EXPECT_LT((rho.to_dense() - v * v.adjoint()).norm(), 1e-13);
}

TEST(StateIo, RoundTrip) {
  std::mt19937_64 rng(12);
  const auto psi = random_state(4, rng);
  const auto path = temp_path("sv.bin");
  write_state(path, psi);
  const auto back = read_state_vector(path);
  ASSERT_EQ(back.n_qubits(), 4);
  EXPECT_TRUE(std::equal(back.amplitudes().begin(), back.amplitudes().end(), psi.amplitudes().begin()));

  const auto rho = DensityMatrix::from_pure(psi);
  write_state(path, rho);
  const auto rho_back = read_density_matrix(path);
  EXPECT_TRUE(std::equal(rho_back.entries().begin(), rho_back.entries().end(), rho.entries().begin()));
  std::filesystem::remove(path);
}

TEST(StateIo, RejectsMalformed) {
  const auto path = temp_path("bad.bin");
  {
    std::ofstream out(path, std::ios::binary);
    const std::uint64_t n = 3;
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    const double x = 1.0;
    out.write(reinterpret_cast<const char*>(&x), sizeof x);
  }
  try {
    read_state_vector(path);
    FAIL() << "truncated dump accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Format);
  }
  {
    std::ofstream out(path, std::ios::binary);
    const std::uint64_t n = 1000;
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
  }
  EXPECT_THROW(read_state_vector(path), Error);
  std::filesystem::remove(path);
  try {
    read_state_vector(temp_path("does_not_exist.bin"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}
