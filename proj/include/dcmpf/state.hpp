#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "dcmpf/kernels.hpp"
#include "dcmpf/pauli.hpp"

namespace dcmpf {

using cplx = std::complex<double>;

// Bit convention: site j (one-based) is bit j-1 of the basis index, and
// |0> is spin up (sigma^z = +1).
class StateVector {
 public:
  // |0...0>
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t dim() const noexcept { return amps_.size(); }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  const cplx& operator[](std::uint64_t k) const { return amps_[k]; }
  double norm() const;

 private:
  int n_;
  std::vector<cplx> amps_;
};

// Stored as a 4^n vector; entry (row, col) lives at row | (col << n), so the
// matrix is a 2n-qubit vector whose low half indexes the ket.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);  // |0...0><0...0|

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t dim() const noexcept { return std::uint64_t{1} << n_; }
  std::span<cplx> entries() noexcept { return entries_; }
  std::span<const cplx> entries() const noexcept { return entries_; }
  cplx& operator()(std::uint64_t row, std::uint64_t col) { return entries_[row | (col << n_)]; }
  const cplx& operator()(std::uint64_t row, std::uint64_t col) const { return entries_[row | (col << n_)]; }

  cplx trace() const;
  DenseOperator to_dense() const;
  // max |rho - rho^dagger|
  double hermiticity_defect() const;
  double min_eigenvalue() const;

 private:
  int n_;
  std::vector<cplx> entries_;
};

struct Observable {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;
};

// (1/N) sum_j sigma^z_j
Observable global_z_magnetization(int n);
// Average of sigma^z over the listed zero-based sites.
Observable site_z_average(int n, const std::vector<int>& sites);
// (2/N) sum over one-based even sites of sigma^z.
Observable even_site_z_magnetization(int n);
Observable observable_from(const HamiltonianSpec& spec);

kernels::PauliMasks masks_of(const PauliWord& word);

void apply_pauli_rotation(StateVector& state, const PauliWord& word, double angle);
void apply_pauli_rotation(DensityMatrix& rho, const PauliWord& word, double angle);

double expectation(const StateVector& state, const Observable& obs);
double expectation(const DensityMatrix& rho, const Observable& obs);

// Alternating down/up product state, down on site 1.
StateVector neel_state(int n);

// Bloch-uniform product state. Site j draws u, v from mt19937_64(seed) in
// site order, sets cos(theta) = 2u - 1 and phi = 2 pi v, with doubles formed
// from the top 53 bits of each 64-bit draw.
StateVector random_product_state(int n, std::uint64_t seed);

// Binary dump: uint64 n_qubits (little endian), then the complex entries as
// little-endian (re, im) double pairs.
void write_state(const std::filesystem::path& path, const StateVector& state);
void write_state(const std::filesystem::path& path, const DensityMatrix& rho);
StateVector read_state_vector(const std::filesystem::path& path);
DensityMatrix read_density_matrix(const std::filesystem::path& path);

}  // namespace dcmpf
