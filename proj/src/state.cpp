#include "dcmpf/state.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "dcmpf/error.hpp"

namespace dcmpf {
namespace {

constexpr int kMaxStateQubits = 30;
constexpr int kMaxDensityQubits = 14;
constexpr double kImagResidue = 1e-10;

void check_state_size(int n, int limit) {
  if (n < 1) fail(ErrorCode::InvalidSize, "state needs at least one qubit");
  if (n > limit) fail(ErrorCode::Resource, "state with " + std::to_string(n) + " qubits exceeds limit");
}

void check_word(const PauliWord& word, int n) {
  if (word.size() != n) {
    fail(ErrorCode::Shape, "Pauli word of length " + std::to_string(word.size()) +
                               " applied to " + std::to_string(n) + "-qubit state");
  }
}

double unit_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double coefficient_scale(const Observable& obs) {
  double scale = 0.0;
  for (const auto& term : obs.terms) scale += std::abs(term.coeff);
  return std::max(scale, 1.0);
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  check_state_size(n_qubits, kMaxStateQubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_state_size(n_qubits, kMaxStateQubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    fail(ErrorCode::Shape, "amplitude count does not match 2^n");
  }
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector state(n_qubits);
  if (index >= state.dim()) fail(ErrorCode::Shape, "basis index out of range");
  state.amps_[0] = 0.0;
  state.amps_[index] = 1.0;
  return state;
}

double StateVector::norm() const { return std::sqrt(kernels::active().norm_squared(amps_)); }

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
  check_state_size(n_qubits, kMaxDensityQubits);
  entries_.assign(std::size_t{1} << (2 * n_qubits), cplx{0.0});
  entries_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  DensityMatrix rho(psi.n_qubits());
  const std::uint64_t dim = psi.dim();
  for (std::uint64_t col = 0; col < dim; ++col) {
    for (std::uint64_t row = 0; row < dim; ++row) rho(row, col) = psi[row] * std::conj(psi[col]);
  }
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  DensityMatrix rho(n_qubits);
  rho.entries_[0] = 0.0;
  const double weight = 1.0 / static_cast<double>(rho.dim());
  for (std::uint64_t k = 0; k < rho.dim(); ++k) rho(k, k) = weight;
  return rho;
}

cplx DensityMatrix::trace() const {
  cplx acc = 0.0;
  for (std::uint64_t k = 0; k < dim(); ++k) acc += (*this)(k, k);
  return acc;
}

DenseOperator DensityMatrix::to_dense() const {
  const auto d = static_cast<Eigen::Index>(dim());
  DenseOperator out(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    for (Eigen::Index row = 0; row < d; ++row) {
      out(row, col) = (*this)(static_cast<std::uint64_t>(row), static_cast<std::uint64_t>(col));
    }
  }
  return out;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::uint64_t col = 0; col < dim(); ++col) {
    for (std::uint64_t row = 0; row <= col; ++row) {
      worst = std::max(worst, std::abs((*this)(row, col) - std::conj((*this)(col, row))));
    }
  }
  return worst;
}

double DensityMatrix::min_eigenvalue() const {
  const DenseOperator dense = to_dense();
  const DenseOperator herm = 0.5 * (dense + dense.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Observable global_z_magnetization(int n) {
  std::vector<int> sites(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) sites[static_cast<std::size_t>(j)] = j;
  return site_z_average(n, sites);
}

Observable site_z_average(int n, const std::vector<int>& sites) {
  if (sites.empty()) fail(ErrorCode::Invalid, "site average needs at least one site");
  Observable obs{n, {}};
  const double weight = 1.0 / static_cast<double>(sites.size());
  for (int site : sites) obs.terms.push_back({weight, PauliWord::on_sites(n, {{site, 'Z'}})});
  return obs;
}

Observable even_site_z_magnetization(int n) {
  std::vector<int> sites;
  for (int j = 1; j < n; j += 2) sites.push_back(j);
  return site_z_average(n, sites);
}

Observable observable_from(const HamiltonianSpec& spec) {
  return Observable{spec.n_qubits(), spec.terms()};
}

kernels::PauliMasks masks_of(const PauliWord& word) {
  return {word.x_mask(), word.z_mask(), word.y_count()};
}

void apply_pauli_rotation(StateVector& state, const PauliWord& word, double angle) {
  check_word(word, state.n_qubits());
  kernels::active().pauli_rotation(state.amplitudes(), masks_of(word), angle);
}

void apply_pauli_rotation(DensityMatrix& rho, const PauliWord& word, double angle) {
  check_word(word, rho.n_qubits());
  const auto& k = kernels::active();
  const kernels::PauliMasks ket = masks_of(word);
  const int n = rho.n_qubits();
  const kernels::PauliMasks bra{ket.x << n, ket.z << n, ket.y_count};
  // The column index carries conj(U) = exp(+i angle conj(P)), conj(P) = (-1)^{nY} P.
  const double bra_angle = (word.y_count() % 2 == 0) ? -angle : angle;
  k.pauli_rotation(rho.entries(), ket, angle);
  k.pauli_rotation(rho.entries(), bra, bra_angle);
}

double expectation(const StateVector& state, const Observable& obs) {
  if (obs.n_qubits != state.n_qubits()) fail(ErrorCode::Shape, "observable size mismatch");
  const auto& k = kernels::active();
  cplx acc = 0.0;
  for (const auto& term : obs.terms) {
    check_word(term.word, state.n_qubits());
    acc += term.coeff * k.pauli_expectation(state.amplitudes(), masks_of(term.word));
  }
  if (std::abs(acc.imag()) > kImagResidue * coefficient_scale(obs)) {
    fail(ErrorCode::Invalid, "expectation value has a non-negligible imaginary part");
  }
  return acc.real();
}

double expectation(const DensityMatrix& rho, const Observable& obs) {
  if (obs.n_qubits != rho.n_qubits()) fail(ErrorCode::Shape, "observable size mismatch");
  const auto& k = kernels::active();
  cplx acc = 0.0;
  for (const auto& term : obs.terms) {
    check_word(term.word, rho.n_qubits());
    acc += term.coeff * k.pauli_trace(rho.entries(), rho.n_qubits(), masks_of(term.word));
  }
  if (std::abs(acc.imag()) > kImagResidue * coefficient_scale(obs)) {
    fail(ErrorCode::Invalid, "expectation value has a non-negligible imaginary part");
  }
  return acc.real();
}

StateVector neel_state(int n) {
  if (n < 1) fail(ErrorCode::InvalidSize, "Neel state needs n >= 1");
  std::uint64_t index = 0;
  for (int j = 0; j < n; j += 2) index |= std::uint64_t{1} << j;  // one-based odd sites are down
  return StateVector::basis(n, index);
}

StateVector random_product_state(int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::InvalidSize, "product state needs n >= 1");
  std::mt19937_64 gen(seed);
  std::vector<cplx> amps{1.0};
  for (int j = 0; j < n; ++j) {
    const double cos_theta = 2.0 * unit_double(gen) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unit_double(gen);
    const double up = std::sqrt(0.5 * (1.0 + cos_theta));
    const double down = std::sqrt(std::max(0.0, 0.5 * (1.0 - cos_theta)));
    const cplx site[2] = {up, std::polar(down, phi)};
    // New site j is bit j: the existing block is the low half.
    std::vector<cplx> next(amps.size() * 2);
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t k = 0; k < amps.size(); ++k) next[k + b * amps.size()] = site[b] * amps[k];
    }
    amps = std::move(next);
  }
  return StateVector(n, std::move(amps));
}

namespace {

void write_entries(const std::filesystem::path& path, int n, std::span<const cplx> entries) {
  static_assert(std::endian::native == std::endian::little, "state dumps assume a little-endian host");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  const std::uint64_t header = static_cast<std::uint64_t>(n);
  out.write(reinterpret_cast<const char*>(&header), sizeof(header));
  out.write(reinterpret_cast<const char*>(entries.data()),
            static_cast<std::streamsize>(entries.size_bytes()));
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

std::vector<cplx> read_entries(const std::filesystem::path& path, int& n, int exponent) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::uint64_t header = 0;
  if (!in.read(reinterpret_cast<char*>(&header), sizeof(header))) {
    fail(ErrorCode::Format, "state dump is missing its header");
  }
  if (header < 1 || header * static_cast<std::uint64_t>(exponent) > 30) fail(ErrorCode::Format, "implausible qubit count in state dump");
  n = static_cast<int>(header);
  std::vector<cplx> entries(std::size_t{1} << (exponent * n));
  if (!in.read(reinterpret_cast<char*>(entries.data()),
               static_cast<std::streamsize>(entries.size() * sizeof(cplx)))) {
    fail(ErrorCode::Format, "state dump is truncated");
  }
  if (in.peek() != std::char_traits<char>::eof()) fail(ErrorCode::Format, "state dump has trailing bytes");
  return entries;
}

}  // namespace

void write_state(const std::filesystem::path& path, const StateVector& state) {
  write_entries(path, state.n_qubits(), state.amplitudes());
}

void write_state(const std::filesystem::path& path, const DensityMatrix& rho) {
  write_entries(path, rho.n_qubits(), rho.entries());
}

StateVector read_state_vector(const std::filesystem::path& path) {
  int n = 0;
  auto entries = read_entries(path, n, 1);
  return StateVector(n, std::move(entries));
}

DensityMatrix read_density_matrix(const std::filesystem::path& path) {
  int n = 0;
  auto entries = read_entries(path, n, 2);
  DensityMatrix rho(n);
  std::copy(entries.begin(), entries.end(), rho.entries().begin());
  return rho;
}

}  // namespace dcmpf
