#pragma once

#include <functional>
#include <vector>

namespace isac {

struct QuadratureSpec {
  double rel_tol = 1e-7;
  double abs_tol = 1e-12;
  int max_depth = 12;
  double tail_epsilon = 1e-10;  // semi-infinite truncation criterion
  int node_budget = 15;         // minimum nodes per axis
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error bound
};

using Integrand = std::function<double(double)>;

// Single Gauss-Kronrod 7-15 panel on [a, b]; error from the embedded rule.
QuadResult gk15(const Integrand& f, double a, double b);

// Adaptive bisection driven by the GK15 error estimate.
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const QuadratureSpec& spec = {});

// Adaptive integral of f over [a, inf) via the map r = a + t/(1-t).
QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadratureSpec& spec = {});

// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Fixed-order Gauss-Legendre on [a, b].
double gauss_fixed(const Integrand& f, double a, double b, int n);

// Composite fixed rule for integrals of the form int_a^inf g(r) dr whose
// integrand carries an exp(-gamma*r) envelope: three panels with node counts
// scaled off `budget`, truncated where the envelope falls below ~1e-10.
double integrate_los_tail(const Integrand& g, double a, double gamma,
                          int budget = 40);

}  // namespace isac
