#pragma once

#include <vector>

#include <gmpxx.h>

namespace dcmpf {

using Integer = mpz_class;
using Rational = mpq_class;

// Solves M x = rhs exactly for a square integer matrix using fraction-free
// (Bareiss) elimination with row pivoting. Throws SingularSystem when M is
// singular.
std::vector<Rational> solve_integer_system(std::vector<std::vector<Integer>> matrix,
                                           std::vector<Integer> rhs);

}  // namespace dcmpf
