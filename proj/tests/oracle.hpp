#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: Pauli matrices come from explicit Kronecker products, time
// evolution from Eigen's matrix exponential, and MPF coefficients from the
// Lagrange-type closed form.

#include <complex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Eigen::Matrix2cd pauli2(char letter) {
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1;
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// letters[j] acts on site j, which is bit j of the index, so the last letter
// is the leftmost Kronecker factor.
inline Mat pauli(const std::string& letters) {
  Mat out = Mat::Identity(1, 1);
  for (char c : letters) out = kron(Mat(pauli2(c)), out);
  return out;
}

struct Term {
  double coeff;
  std::string word;
};

inline std::string word_on(int n, std::vector<std::pair<int, char>> sites) {
  std::string w(static_cast<std::size_t>(n), 'I');
  for (auto [s, c] : sites) w[static_cast<std::size_t>(s)] = c;
  return w;
}

inline std::vector<Term> tfim_terms(int n, double J, double h) {
  std::vector<Term> out;
  for (int j = 0; j + 1 < n; ++j) out.push_back({-J, word_on(n, {{j, 'Z'}, {j + 1, 'Z'}})});
  for (int j = 0; j < n; ++j) out.push_back({h, word_on(n, {{j, 'X'}})});
  return out;
}

inline Mat hamiltonian(const std::vector<Term>& terms) {
  Mat h = Mat::Zero(pauli(terms.front().word).rows(), pauli(terms.front().word).cols());
  for (const auto& t : terms) h += t.coeff * pauli(t.word);
  return h;
}

inline Mat expm_i(const Mat& h, double t) { return (cplx(0, -t) * h).exp(); }

// exp(-i theta c P) applied left to right in the given order.
inline Mat product(const std::vector<std::pair<Term, double>>& sequence, int n) {
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (const auto& [term, theta] : sequence) u = expm_i(term.coeff * pauli(term.word), theta) * u;
  return u;
}

inline Mat lie1(const std::vector<Term>& terms, int n, double t, int folds, bool reversed = false) {
  std::vector<std::pair<Term, double>> seq;
  for (int f = 0; f < folds; ++f) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      seq.push_back({terms[reversed ? terms.size() - 1 - i : i], t / folds});
    }
  }
  return product(seq, n);
}

inline Mat suzuki2(const std::vector<Term>& terms, int n, double t, int folds) {
  std::vector<std::pair<Term, double>> seq;
  for (int f = 0; f < folds; ++f) {
    for (const auto& term : terms) seq.push_back({term, t / (2.0 * folds)});
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) seq.push_back({*it, t / (2.0 * folds)});
  }
  return product(seq, n);
}

// Ruth's scheme on H = A + B with A, B each a commuting sum.
inline Mat ruth3(const std::vector<Term>& a, const std::vector<Term>& b, int n, double t, int folds,
                 bool reversed = false) {
  const double d[3] = {7.0 / 24, 3.0 / 4, -1.0 / 24};
  const double c[3] = {2.0 / 3, -2.0 / 3, 1.0};
  const Mat ha = hamiltonian(a), hb = hamiltonian(b);
  const double s = t / folds;
  Mat step = Mat::Identity(1 << n, 1 << n);
  for (int k = 0; k < 3; ++k) {
    const Mat ea = expm_i(ha, d[k] * s), eb = expm_i(hb, c[k] * s);
    step = reversed ? step * ea * eb : eb * ea * step;
  }
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (int f = 0; f < folds; ++f) u = step * u;
  return u;
}

// c_i = prod_{j != i} n_i^2 / (n_i^2 - n_j^2)
inline std::vector<mpq_class> closed_form(const std::vector<int>& foldings) {
  std::vector<mpq_class> out;
  for (std::size_t i = 0; i < foldings.size(); ++i) {
    mpq_class c = 1;
    const long ni2 = static_cast<long>(foldings[i]) * foldings[i];
    for (std::size_t j = 0; j < foldings.size(); ++j) {
      if (j == i) continue;
      const long nj2 = static_cast<long>(foldings[j]) * foldings[j];
      mpq_class f(ni2, ni2 - nj2);
      f.canonicalize();
      c *= f;
    }
    out.push_back(c);
  }
  return out;
}

// sum_i c_i n_i^{-q}
inline mpq_class moment(const std::vector<mpq_class>& c, const std::vector<int>& n, int q) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n[i]), static_cast<unsigned long>(q));
    total += c[i] / mpq_class(p);
  }
  return total;
}

inline Eigen::VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
  return v / v.norm();
}

inline double spectral_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace oracle
