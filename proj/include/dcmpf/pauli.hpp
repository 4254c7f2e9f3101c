#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace dcmpf {

using DenseOperator = Eigen::MatrixXcd;

inline constexpr int kDefaultOracleLimit = 12;

// Tensor product of single-site Pauli letters. Position j of the letter
// string is site j + 1; site 1 maps to the least significant index bit.
class PauliWord {
 public:
  PauliWord() = default;
  explicit PauliWord(std::string letters);

  // Word of length n with `letter` on the listed zero-based sites, I elsewhere.
  static PauliWord on_sites(int n, std::initializer_list<std::pair<int, char>> sites);

  int size() const noexcept { return static_cast<int>(letters_.size()); }
  const std::string& letters() const noexcept { return letters_; }
  char at(int site) const { return letters_.at(static_cast<std::size_t>(site)); }

  // Sites where the letter flips the bit (X or Y).
  std::uint64_t x_mask() const noexcept { return x_mask_; }
  // Sites where the letter contributes a sign (Z or Y).
  std::uint64_t z_mask() const noexcept { return z_mask_; }
  int y_count() const noexcept { return y_count_; }

  std::vector<int> support() const;
  int weight() const noexcept;
  bool is_identity() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }
  bool commutes_with(const PauliWord& other) const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;

 private:
  std::string letters_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliWord word;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

// H = sum of weighted Pauli words, in a fixed significant order. Optional
// groups partition the term indices (zero-based) into ordered blocks.
class HamiltonianSpec {
 public:
  HamiltonianSpec(int n_qubits, std::vector<PauliTerm> terms,
                  std::vector<std::vector<std::size_t>> groups = {});

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }
  std::size_t size() const noexcept { return terms_.size(); }

  friend bool operator==(const HamiltonianSpec&, const HamiltonianSpec&) = default;

 private:
  int n_qubits_;
  std::vector<PauliTerm> terms_;
  std::vector<std::vector<std::size_t>> groups_;
};

// -J sum Z_j Z_{j+1} + h sum X_j, open chain. Bonds first, then fields.
HamiltonianSpec build_tfim(int n, double J, double h);

// -J sum (X X + Y Y + delta Z Z) + h sum Z_j, open chain. Per-bond XX, YY,
// ZZ blocks ascending, then the field block. Zero coefficients are dropped.
HamiltonianSpec build_xxz(int n, double J, double delta, double h);

DenseOperator pauli_matrix(const PauliWord& word, int oracle_limit = kDefaultOracleLimit);
DenseOperator to_dense(const HamiltonianSpec& spec, int oracle_limit = kDefaultOracleLimit);

nlohmann::json to_json(const HamiltonianSpec& spec);
HamiltonianSpec hamiltonian_from_json(const nlohmann::json& doc);

}  // namespace dcmpf
