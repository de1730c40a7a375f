#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace tempus {

struct QuadRule {
    std::vector<double> x, w;
};

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration
const QuadRule& gauss_legendre(int n);

// composite GL rule on [a, b] with panel width <= max_h
QuadRule composite_gl(double a, double b, double max_h, int nodes_per_panel = 16);

// adaptive complex-valued integration (nested GL, interval bisection);
// absolute tolerance, returns the integral estimate
std::complex<double> integrate_adaptive(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol = 1e-12, int max_depth = 40);

} // namespace tempus
