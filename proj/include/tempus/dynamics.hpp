#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tempus/errors.hpp"
#include "tempus/spectra.hpp"
#include "tempus/system.hpp"

namespace tempus {

// State expanded in the energy basis. Evolution is exact (pure phases on
// the coefficients), never time-stepped.
struct EvolvingState {
    EnergyBasis basis;
    Eigen::VectorXcd coeffs; // unit norm

    EvolvingState(EnergyBasis b, Eigen::VectorXcd c);
};

EvolvingState evolve(const EvolvingState& state, double t);

struct CarpetGrid {
    std::vector<double> qgrid;
    std::vector<double> tgrid;
    // density(i, j) = |psi(qgrid[j], tgrid[i])|^2
    Eigen::MatrixXd density;
};

// |psi(q,t)|^2 on the product grid. Every time slice is norm-checked on an
// internal quadrature grid dense enough for the fastest basis mode; a
// deviation beyond norm_tol throws NormDrift.
CarpetGrid carpet(const EvolvingState& state, const std::vector<double>& qgrid,
                  const std::vector<double>& tgrid, double norm_tol = 1e-6);

struct VarianceSeries {
    std::vector<double> tgrid;
    std::vector<double> sigma2;
    double t_min = 0.0;     // parabolically refined global minimizer
    double sigma2_min = 0.0; // sigma^2 evaluated at t_min
    std::optional<double> tau;
    std::optional<double> sigma2_at_tau;
};

// sigma^2(t) = <q^2> - <q>^2 from the closed-form position matrices.
// Ties in the grid minimum break toward smallest t.
VarianceSeries variance_series(const EvolvingState& state,
                               const std::vector<double>& tgrid,
                               std::optional<double> tau = std::nullopt);

struct TransitionSeries {
    std::vector<double> tgrid;
    std::vector<double> prob;
    double t_max = 0.0; // refined global maximizer
    double peak = 0.0;  // largest sampled probability
    std::pair<int, int> pair{-1, -1};
};

// P_t = |<to, U_t from>|^2 with both vectors in the same energy basis.
TransitionSeries transition_series(const Eigenpair& from, const Eigenpair& to,
                                   const std::vector<double>& tgrid,
                                   const EnergyBasis& basis,
                                   std::pair<int, int> pair_ids = {-1, -1});

// Adjacent-pair study over the `count` smallest-|tau| eigenvalues of a
// sorted spectrum: per pair evolve the lower-tau member, project onto the
// higher, locate the first-peak time on [0, 2*dtau], then regress t_max
// against dtau by ordinary least squares.
struct TransitionStudy {
    std::vector<TransitionSeries> series;
    std::vector<double> dtau;
    std::vector<double> tmax;
    double slope = 0.0;
    double intercept = 0.0;
    double min_peak = 1.0;
};

TransitionStudy transition_study(const std::vector<Eigenpair>& pairs,
                                 const EnergyBasis& basis, int count = 10,
                                 int samples = 2001);

// uniform grid helper shared by the CLI defaults (samples >= 2)
std::vector<double> linspace(double lo, double hi, int samples);

} // namespace tempus
