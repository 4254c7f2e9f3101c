#pragma once

#include "dcmpf/state.hpp"
#include "dcmpf/trotter.hpp"

namespace dcmpf {

struct NoiseModel {
  double p_cnot = 0.0;

  explicit NoiseModel(double p = 0.0);
};

// Two-qubit replacement channel on sites q1, q2 (zero-based):
// rho <- (1-p) rho + p tr_{q1,q2}(rho) (x) I/4.
void depolarize_pair(DensityMatrix& rho, int q1, int q2, double p);

// Conjugates rho0 by every gate; each CNOT is followed by depolarize_pair on
// its (control, target) with model.p_cnot. Single-qubit gates are noiseless.
DensityMatrix run_noisy(const GateList& gates, DensityMatrix rho0, const NoiseModel& model);

}  // namespace dcmpf
