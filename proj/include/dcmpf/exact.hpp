#pragma once

#include <Eigen/Dense>

#include "dcmpf/pauli.hpp"
#include "dcmpf/state.hpp"

namespace dcmpf {

// Exact propagator U(t) = exp(-iHt) from one Hermitian eigendecomposition of
// the dense Hamiltonian; the eigenpairs are reused for every t.
class ExactEvolver {
 public:
  explicit ExactEvolver(const HamiltonianSpec& spec, int oracle_limit = kDefaultOracleLimit);

  int n_qubits() const noexcept { return n_; }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }

  DenseOperator propagator(double t) const;
  StateVector evolve(const StateVector& state, double t) const;

 private:
  int n_;
  Eigen::VectorXd energies_;
  DenseOperator eigenvectors_;
};

StateVector exact_evolve(const HamiltonianSpec& spec, const StateVector& state, double t);

}  // namespace dcmpf
