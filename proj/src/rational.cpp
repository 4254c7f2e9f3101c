#include "dcmpf/rational.hpp"

#include <utility>

#include "dcmpf/error.hpp"

namespace dcmpf {

std::vector<Rational> solve_integer_system(std::vector<std::vector<Integer>> matrix,
                                           std::vector<Integer> rhs) {
  const std::size_t n = matrix.size();
  if (rhs.size() != n) fail(ErrorCode::Shape, "right-hand side length mismatch");
  for (auto& row : matrix) {
    if (row.size() != n) fail(ErrorCode::Shape, "system matrix must be square");
  }
  for (std::size_t i = 0; i < n; ++i) matrix[i].push_back(rhs[i]);

  // After step k every entry below the diagonal in column k is zero and
  // entries (i, j) with i, j > k are the (k+1)-order leading minors.
  Integer previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (matrix[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && matrix[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) fail(ErrorCode::SingularSystem, "coefficient system is singular");
      std::swap(matrix[k], matrix[swap_row]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        Integer value = matrix[k][k] * matrix[i][j] - matrix[i][k] * matrix[k][j];
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
        matrix[i][j] = std::move(value);
      }
      matrix[i][k] = 0;
    }
    previous = matrix[k][k];
  }

  std::vector<Rational> x(n);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = n - 1 - step;
    Rational acc(matrix[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(matrix[i][j]) * x[j];
    x[i] = acc / Rational(matrix[i][i]);
    x[i].canonicalize();
  }
  return x;
}

}  // namespace dcmpf
