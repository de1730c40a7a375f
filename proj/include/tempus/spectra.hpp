#pragma once

#include <optional>
#include <vector>

#include "tempus/operators.hpp"

namespace tempus {

enum class Sector { General, Even, Odd };

// closed-form spectral data attached to a root of the characteristic function
struct ClosedForm {
    double r = 0.0;                        // signed; tau = mu l^2 / (2 hbar r)
    Sector sector = Sector::General;
    std::complex<double> alpha1{0.0, 0.0}; // general-sector mixing coefficient
};

struct Eigenpair {
    double tau = 0.0;
    Eigen::VectorXcd coeffs; // truncated-basis coefficients (may be empty)
    std::optional<ClosedForm> closed_form;
};

// Hermitian diagonalization ("route A"); eigenvalues sorted by |tau|
// ascending (ties by signed value), eigenvectors orthonormal with the gauge
// fixed so the largest-modulus coefficient is real positive
std::vector<Eigenpair> diagonalize(const EnergyMatrix& m,
                                   double herm_tol = 1e-8);

// boundary-condition system whose determinant vanishes at general-gamma
// eigenvalues ("route B"); entries are functions of the scan variable r
struct CharacteristicSystem {
    std::complex<double> t11, t12, t21, t22;
    std::complex<double> det() const { return t11 * t22 - t21 * t12; }
};

CharacteristicSystem characteristic_system(double r, const OperatorSpec& spec,
                                           const SystemConfig& cfg);

// mixing coefficient of the general-sector closed form at a root
std::complex<double> alpha1_ratio(double r, const OperatorSpec& spec,
                                  const SystemConfig& cfg);

// sector characteristic function; Even/Odd require gamma in {0, pi/2},
// General requires sin(gamma) away from 0
std::complex<double> characteristic_function(double r, Sector sector,
                                             const OperatorSpec& spec,
                                             const SystemConfig& cfg);

struct RootScanOptions {
    double r_lo = 0.05;      // scan window; must not straddle 0
    double r_hi = 55.0;      // beyond ~55 the series error guard trips
    double step_ratio = 5e-4; // geometric sampling density in |r|
    double accept = 1e-8;    // root if |f| < accept * bracket scale
    double reject = 1e-4;    // dip if refined |f| stays above reject * scale
    int max_refine = 200;
};

// first `count` roots of the sector characteristic function inside the
// window, smallest |r| first
std::vector<double> characteristic_roots(const OperatorSpec& spec,
                                         Sector sector, int count,
                                         const SystemConfig& cfg,
                                         const RootScanOptions& opt = {});

// every root inside the window, smallest |r| first; never throws on a
// short harvest (callers that need a fixed count use the variant above)
std::vector<double> characteristic_roots_within(const OperatorSpec& spec,
                                                Sector sector,
                                                const SystemConfig& cfg,
                                                const RootScanOptions& opt = {});

// wrap a root into an Eigenpair carrying the closed form (no coefficients)
Eigenpair route_b_pair(double r, Sector sector, const OperatorSpec& spec,
                       const SystemConfig& cfg);

struct AssembledForm {
    Eigen::VectorXcd values; // closed form on qgrid, L2-normalized on [-l,l]
    double overlap = 0.0;    // |<form, route-A vector>| when coeffs present
    // norm of the form's projection onto the truncated basis span; an
    // overlap can never exceed this, so overlap/span_norm measures the
    // within-span alignment separately from the truncation tail
    double span_norm = 0.0;
};

AssembledForm assemble_eigenfunction(const Eigenpair& pair,
                                     const OperatorSpec& spec,
                                     const std::vector<double>& qgrid,
                                     const SystemConfig& cfg);

// parity expectation Re<c, Pc> of a coefficient vector; the involution is
// c_k <-> c_{-k} at gamma = 0 and c_k <-> c_{-k-1} at gamma = pi/2
double parity_overlap(const Eigen::VectorXcd& coeffs, const EnergyBasis& basis);

Sector classify_parity(const Eigen::VectorXcd& coeffs,
                       const EnergyBasis& basis, double threshold = 0.5);

// deterministic zero-coefficient-sum vector supported at least `margin`
// indices away from the truncation edges
struct CanonicalTrialVector {
    Eigen::VectorXcd coeffs;

    static CanonicalTrialVector make(const EnergyBasis& basis, unsigned seed,
                                     int margin = 5);
    bool canonical(const EnergyBasis& basis, int margin = 5) const;
};

// ||(TH - HT)c - sign * i hbar c|| / ||c|| with H diagonal in the basis;
// reports (never throws on) non-canonical trial vectors
double ccr_residual(const EnergyMatrix& m, const Eigen::VectorXcd& trial,
                    int sign = +1);

// index of the tau closest to `tau` within a relative guard band, else -1
int match_nearest(const std::vector<double>& taus, double tau,
                  double guard = 0.10);

} // namespace tempus
