#pragma once

// Quasi-Newton minimization with central-difference gradients. Internal.

#include <functional>

#include <Eigen/Dense>

namespace entangle::detail {

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

inline Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double h = 1e-6) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = probe(i);
    probe(i) = xi + h;
    const double up = f(probe);
    probe(i) = xi - h;
    const double down = f(probe);
    probe(i) = xi;
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

inline MinimizeResult bfgs(const Objective& f, Eigen::VectorXd x, int max_iterations = 400, double grad_tol = 1e-9,
                           double value_tol = 1e-14) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  double fx = f(x);
  Eigen::VectorXd g = numeric_gradient(f, x);
  MinimizeResult out;
  for (int it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    if (g.norm() < grad_tol) {
      out.converged = true;
      break;
    }
    Eigen::VectorXd p = -h_inv * g;
    if (p.dot(g) >= 0.0) {
      h_inv.setIdentity();
      p = -g;
    }
    // Armijo backtracking
    double step = 1.0;
    double f_new = f(x + step * p);
    const double slope = p.dot(g);
    while (f_new > fx + 1e-4 * step * slope && step > 1e-12) {
      step *= 0.5;
      f_new = f(x + step * p);
    }
    if (step <= 1e-12) {
      out.converged = std::abs(slope) < 1e-12;
      break;
    }
    const Eigen::VectorXd s = step * p;
    x += s;
    const Eigen::VectorXd g_new = numeric_gradient(f, x);
    const Eigen::VectorXd y = g_new - g;
    const double improvement = fx - f_new;
    fx = f_new;
    g = g_new;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const Eigen::VectorXd hy = h_inv * y;
      h_inv += ((sy + y.dot(hy)) / (sy * sy)) * (s * s.transpose()) - (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    if (improvement < value_tol * (1.0 + std::abs(fx)) && g.norm() < 1e-6) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  return out;
}

}  // namespace entangle::detail
