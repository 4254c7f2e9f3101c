#include "dcmpf/analysis.hpp"

#include <cmath>
#include <memory>

#include <Eigen/SVD>

#include "dcmpf/error.hpp"
#include "dcmpf/exact.hpp"

namespace dcmpf {
namespace {

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorCode::InsufficientData, "fit abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

FitResult fit_error_exponent(const std::vector<std::pair<int, double>>& points, double ratio) {
  if (points.size() < 2) fail(ErrorCode::InsufficientData, "exponent fit needs at least two points");
  if (!(ratio > 0.0 && ratio < 1.0)) fail(ErrorCode::Domain, "ratio t/n_mid must lie in (0, 1)");
  std::vector<double> x, y;
  for (const auto& [K, err] : points) {
    if (!(err > 0.0) || !std::isfinite(err)) fail(ErrorCode::Domain, "errors must be positive and finite");
    x.push_back(K * std::log(ratio));
    y.push_back(std::log(err));
  }
  const LineFit line = fit_line(x, y);
  return {std::exp(line.intercept), line.slope, line.rms};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorCode::Shape, "slope fit needs matching x and y");
  if (x.size() < 2) fail(ErrorCode::InsufficientData, "slope fit needs at least two points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) fail(ErrorCode::Domain, "log-log fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly).slope;
}

DenseOperator plan_operator(const FormulaPlan& plan, const HamiltonianSpec& spec, double t, int oracle_limit) {
  const int n = spec.n_qubits();
  if (n > oracle_limit) fail(ErrorCode::Resource, "dense operator exceeds the oracle size limit");
  const std::uint64_t dim = std::uint64_t{1} << n;
  DenseOperator out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    StateVector column = StateVector::basis(n, col);
    apply_plan(column, plan, spec, t);
    for (std::uint64_t row = 0; row < dim; ++row) {
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = column[row];
    }
  }
  return out;
}

OperatorBuilder formula_builder(FormulaKind kind, const HamiltonianSpec& spec, int folds) {
  auto plan = std::make_shared<FormulaPlan>(lower(kind, spec, folds));
  return [plan, spec](double t) { return plan_operator(*plan, spec, t); };
}

OperatorBuilder scheme_builder(const MpfScheme& scheme, FormulaKind base, const HamiltonianSpec& spec) {
  struct Channel {
    double weight;
    FormulaPlan plan;
  };
  auto channels = std::make_shared<std::vector<Channel>>();
  for (std::size_t i = 0; i < scheme.foldings.size(); ++i) {
    const double c = scheme.coefficients.at(i).get_d();
    const int n = scheme.foldings[i];
    if (scheme.mode == MpfMode::Dual) {
      channels->push_back({0.5 * c, lower(base, spec, n)});
      channels->push_back({0.5 * c, lower(reversed_kind(base), spec, n)});
    } else {
      channels->push_back({c, lower(base, spec, n)});
    }
  }
  return [channels, spec](double t) {
    const Eigen::Index dim = Eigen::Index{1} << spec.n_qubits();
    DenseOperator total = DenseOperator::Zero(dim, dim);
    for (const auto& ch : *channels) total += ch.weight * plan_operator(ch.plan, spec, t);
    return total;
  };
}

double operator_norm(const DenseOperator& op, OperatorNorm norm) {
  if (norm == OperatorNorm::Frobenius) return op.norm();
  Eigen::JacobiSVD<DenseOperator> svd(op);
  return svd.singularValues()(0);
}

double estimate_operator_order(const OperatorBuilder& builder, const HamiltonianSpec& spec,
                               const std::vector<double>& t_grid, OperatorNorm norm) {
  if (t_grid.size() < 3) fail(ErrorCode::InsufficientData, "order estimate needs at least three t values");
  for (double t : t_grid) {
    if (!(t > 0.0 && t < 1.0)) fail(ErrorCode::Domain, "t grid values must lie in (0, 1)");
  }
  const ExactEvolver exact(spec);
  std::vector<double> errors;
  for (double t : t_grid) {
    const double err = operator_norm(builder(t) - exact.propagator(t), norm);
    if (err < 1e-13) {
      fail(ErrorCode::Saturation, "operator error " + std::to_string(err) + " at t = " + std::to_string(t) +
                                      " is at double-precision roundoff; use larger t");
    }
    errors.push_back(err);
  }
  return log_log_slope(t_grid, errors);
}

}  // namespace dcmpf
