#include "dcmpf/exact.hpp"

#include <Eigen/Eigenvalues>

#include "dcmpf/error.hpp"

namespace dcmpf {

ExactEvolver::ExactEvolver(const HamiltonianSpec& spec, int oracle_limit) : n_(spec.n_qubits()) {
  const DenseOperator h = to_dense(spec, oracle_limit);
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Resource, "Hermitian eigensolver did not converge");
  energies_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

DenseOperator ExactEvolver::propagator(double t) const {
  const Eigen::VectorXcd phases = (energies_.cast<cplx>() * cplx(0.0, -t)).array().exp();
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

StateVector ExactEvolver::evolve(const StateVector& state, double t) const {
  if (state.n_qubits() != n_) fail(ErrorCode::Shape, "state size does not match Hamiltonian");
  const auto amps = state.amplitudes();
  const Eigen::Map<const Eigen::VectorXcd> psi(amps.data(), static_cast<Eigen::Index>(amps.size()));
  const Eigen::VectorXcd coords = eigenvectors_.adjoint() * psi;
  const Eigen::VectorXcd phases = (energies_.cast<cplx>() * cplx(0.0, -t)).array().exp();
  const Eigen::VectorXcd out = eigenvectors_ * (phases.array() * coords.array()).matrix();
  return StateVector(n_, std::vector<cplx>(out.data(), out.data() + out.size()));
}

StateVector exact_evolve(const HamiltonianSpec& spec, const StateVector& state, double t) {
  return ExactEvolver(spec).evolve(state, t);
}

}  // namespace dcmpf
