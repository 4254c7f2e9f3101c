#include "dcmpf/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

#include "dcmpf/error.hpp"

namespace dcmpf {

PauliWord::PauliWord(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty()) fail(ErrorCode::Shape, "Pauli word must not be empty");
  if (letters_.size() > 64) fail(ErrorCode::Shape, "Pauli word longer than 64 sites");
  for (std::size_t j = 0; j < letters_.size(); ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    switch (letters_[j]) {
      case 'I': break;
      case 'X': x_mask_ |= bit; break;
      case 'Y': x_mask_ |= bit; z_mask_ |= bit; ++y_count_; break;
      case 'Z': z_mask_ |= bit; break;
      default:
        fail(ErrorCode::Format, std::string("invalid Pauli letter '") + letters_[j] + "'");
    }
  }
}

PauliWord PauliWord::on_sites(int n, std::initializer_list<std::pair<int, char>> sites) {
  std::string letters(static_cast<std::size_t>(n), 'I');
  for (auto [site, letter] : sites) {
    if (site < 0 || site >= n) fail(ErrorCode::Site, "site index out of range");
    letters[static_cast<std::size_t>(site)] = letter;
  }
  return PauliWord(std::move(letters));
}

std::vector<int> PauliWord::support() const {
  std::vector<int> sites;
  for (int j = 0; j < size(); ++j) {
    if (letters_[static_cast<std::size_t>(j)] != 'I') sites.push_back(j);
  }
  return sites;
}

int PauliWord::weight() const noexcept { return std::popcount(x_mask_ | z_mask_); }

bool PauliWord::commutes_with(const PauliWord& other) const {
  if (other.size() != size()) fail(ErrorCode::Shape, "Pauli words differ in length");
  // Symplectic product: sites where exactly one of the pair anticommutes.
  const std::uint64_t anti = (x_mask_ & other.z_mask_) ^ (z_mask_ & other.x_mask_);
  return std::popcount(anti) % 2 == 0;
}

HamiltonianSpec::HamiltonianSpec(int n_qubits, std::vector<PauliTerm> terms,
                                 std::vector<std::vector<std::size_t>> groups)
    : n_qubits_(n_qubits), terms_(std::move(terms)), groups_(std::move(groups)) {
  if (n_qubits_ < 1) fail(ErrorCode::InvalidSize, "n_qubits must be positive");
  for (const auto& term : terms_) {
    if (term.word.size() != n_qubits_) {
      fail(ErrorCode::Shape, "term '" + term.word.letters() + "' does not match n_qubits");
    }
    if (term.word.is_identity()) fail(ErrorCode::Invalid, "identity term in Hamiltonian");
    if (!std::isfinite(term.coeff)) fail(ErrorCode::Invalid, "non-finite coefficient");
  }
  if (!groups_.empty()) {
    std::vector<int> seen(terms_.size(), 0);
    for (const auto& group : groups_) {
      if (group.empty()) fail(ErrorCode::Configuration, "empty term group");
      for (std::size_t index : group) {
        if (index >= terms_.size()) fail(ErrorCode::Configuration, "group index out of range");
        ++seen[index];
      }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
      fail(ErrorCode::Configuration, "groups must partition the term indices exactly");
    }
  }
}

HamiltonianSpec build_tfim(int n, double J, double h) {
  if (n < 2) fail(ErrorCode::InvalidSize, "TFIM chain needs n >= 2");
  std::vector<PauliTerm> terms;
  std::vector<std::size_t> bonds;
  std::vector<std::size_t> fields;
  if (J != 0.0) {
    for (int j = 0; j + 1 < n; ++j) {
      bonds.push_back(terms.size());
      terms.push_back({-J, PauliWord::on_sites(n, {{j, 'Z'}, {j + 1, 'Z'}})});
    }
  }
  if (h != 0.0) {
    for (int j = 0; j < n; ++j) {
      fields.push_back(terms.size());
      terms.push_back({h, PauliWord::on_sites(n, {{j, 'X'}})});
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  if (!bonds.empty()) groups.push_back(std::move(bonds));
  if (!fields.empty()) groups.push_back(std::move(fields));
  return HamiltonianSpec(n, std::move(terms), std::move(groups));
}

HamiltonianSpec build_xxz(int n, double J, double delta, double h) {
  if (n < 2) fail(ErrorCode::InvalidSize, "XXZ chain needs n >= 2");
  std::vector<PauliTerm> terms;
  std::vector<std::vector<std::size_t>> groups;
  for (int j = 0; j + 1 < n; ++j) {
    std::vector<std::size_t> bond;
    const std::pair<char, double> parts[] = {{'X', -J}, {'Y', -J}, {'Z', -J * delta}};
    for (auto [letter, coeff] : parts) {
      if (coeff == 0.0) continue;
      bond.push_back(terms.size());
      terms.push_back({coeff, PauliWord::on_sites(n, {{j, letter}, {j + 1, letter}})});
    }
    if (!bond.empty()) groups.push_back(std::move(bond));
  }
  if (h != 0.0) {
    std::vector<std::size_t> fields;
    for (int j = 0; j < n; ++j) {
      fields.push_back(terms.size());
      terms.push_back({h, PauliWord::on_sites(n, {{j, 'Z'}})});
    }
    groups.push_back(std::move(fields));
  }
  return HamiltonianSpec(n, std::move(terms), std::move(groups));
}

namespace {

void check_oracle_size(int n, int oracle_limit) {
  if (n > oracle_limit) {
    fail(ErrorCode::Resource, "dense oracle limited to " + std::to_string(oracle_limit) +
                                  " qubits, requested " + std::to_string(n));
  }
}

// P|j> = i^{nY} (-1)^{popcount(j & zmask)} |j ^ xmask>
void accumulate_pauli(DenseOperator& out, const PauliWord& word, std::complex<double> weight) {
  const std::uint64_t dim = std::uint64_t{1} << word.size();
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> phase = weight * kIPow[word.y_count() % 4];
  for (std::uint64_t col = 0; col < dim; ++col) {
    const std::uint64_t row = col ^ word.x_mask();
    const double sign = (std::popcount(col & word.z_mask()) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += sign * phase;
  }
}

}  // namespace

DenseOperator pauli_matrix(const PauliWord& word, int oracle_limit) {
  check_oracle_size(word.size(), oracle_limit);
  const auto dim = Eigen::Index{1} << word.size();
  DenseOperator out = DenseOperator::Zero(dim, dim);
  accumulate_pauli(out, word, 1.0);
  return out;
}

DenseOperator to_dense(const HamiltonianSpec& spec, int oracle_limit) {
  check_oracle_size(spec.n_qubits(), oracle_limit);
  const auto dim = Eigen::Index{1} << spec.n_qubits();
  DenseOperator out = DenseOperator::Zero(dim, dim);
  for (const auto& term : spec.terms()) accumulate_pauli(out, term.word, term.coeff);
  return out;
}

nlohmann::json to_json(const HamiltonianSpec& spec) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& term : spec.terms()) {
    terms.push_back({{"coeff", term.coeff}, {"word", term.word.letters()}});
  }
  return {{"n_qubits", spec.n_qubits()}, {"terms", terms}, {"groups", spec.groups()}};
}

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& doc) {
  try {
    std::vector<PauliTerm> terms;
    for (const auto& item : doc.at("terms")) {
      terms.push_back({item.at("coeff").get<double>(),
                       PauliWord(item.at("word").get<std::string>())});
    }
    std::vector<std::vector<std::size_t>> groups;
    if (doc.contains("groups")) groups = doc.at("groups").get<std::vector<std::vector<std::size_t>>>();
    return HamiltonianSpec(doc.at("n_qubits").get<int>(), std::move(terms), std::move(groups));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Format, std::string("malformed Hamiltonian document: ") + e.what());
  }
}

}  // namespace dcmpf
