#pragma once

#include <complex>

#include <Eigen/Dense>

#include "tempus/errors.hpp"
#include "tempus/quadrature.hpp"

namespace tempus {

// Confined particle on [-l, l] with boundary phase gamma:
// phi(-l) = e^{-2i gamma} phi(l). Energy eigenfunctions
// phi_k(q) = (2l)^{-1/2} exp[i q (gamma + k pi)/l], k = -N..N.
struct SystemConfig {
    double mu = 1.0;
    double l = 1.0;
    double hbar = 1.0;
    double gamma = M_PI / 4; // reduced into (-pi, pi]

    void validate() const;
};

// reduce an angle into (-pi, pi]
double reduce_gamma(double gamma);

double theta(int k, const SystemConfig& cfg); // gamma + k pi

double energy(int k, const SystemConfig& cfg);

std::complex<double> eigenfunction(int k, double q, const SystemConfig& cfg);

struct EnergyBasis {
    SystemConfig cfg;
    int N = 50; // indices k = -N..N, 2N+1 states

    EnergyBasis(SystemConfig c, int n);
    int size() const { return 2 * N + 1; }
    int idx(int k) const { return k + N; }
    int kof(int i) const { return i - N; }
    bool degenerate() const; // exact E_k collisions (gamma = 0 or pi/2)
};

struct EnergyMatrix {
    EnergyBasis basis;
    Eigen::MatrixXcd entries;
    double herm_defect = 0.0; // pre-Hermitization defect recorded by builders
};

// phi_k(q) for all k in the basis, by phase recurrence
Eigen::VectorXcd eigenfunction_row(const EnergyBasis& basis, double q);

// Hermitian matrix of q^power in the energy basis, closed form
EnergyMatrix position_matrix(const EnergyBasis& basis, int power);

// composite GL rule resolving the fastest basis oscillation on [-l, l]
QuadRule basis_quadrature(const EnergyBasis& basis, double panel_phase = 8.0);

} // namespace tempus
