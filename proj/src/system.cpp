#include "tempus/system.hpp"

#include <cmath>

namespace tempus {

void SystemConfig::validate() const {
    if (!(mu > 0) || !(l > 0) || !(hbar > 0))
        throw InvalidParam("SystemConfig: mu, l, hbar must be positive");
    if (!(gamma > -M_PI) || !(gamma <= M_PI) || !std::isfinite(gamma))
        throw InvalidParam("SystemConfig: gamma must lie in (-pi, pi]");
}

double reduce_gamma(double gamma) {
    double g = std::remainder(gamma, 2.0 * M_PI); // (-pi, pi] up to sign of pi
    if (g <= -M_PI) g = M_PI;
    return g;
}

double theta(int k, const SystemConfig& cfg) { return cfg.gamma + k * M_PI; }

double energy(int k, const SystemConfig& cfg) {
    double th = theta(k, cfg);
    double p = cfg.hbar * th / cfg.l;
    return p * p / (2.0 * cfg.mu);
}

std::complex<double> eigenfunction(int k, double q, const SystemConfig& cfg) {
    if (std::abs(q) > cfg.l)
        throw DomainError("eigenfunction: |q| > l");
    double phase = q * theta(k, cfg) / cfg.l;
    return std::polar(1.0 / std::sqrt(2.0 * cfg.l), phase);
}

EnergyBasis::EnergyBasis(SystemConfig c, int n) : cfg(c), N(n) {
    cfg.validate();
    if (N < 1) throw InvalidParam("EnergyBasis: N must be >= 1");
}

bool EnergyBasis::degenerate() const {
    // E_k = E_k' iff |theta_k| = |theta_k'|, which happens exactly when
    // gamma is a multiple of pi/2 (gamma=0: k <-> -k; gamma=pi/2: k <-> -k-1)
    double g = std::abs(cfg.gamma);
    return g < 1e-12 || std::abs(g - M_PI / 2) < 1e-12 ||
           std::abs(g - M_PI) < 1e-12;
}

Eigen::VectorXcd eigenfunction_row(const EnergyBasis& basis, double q) {
    const SystemConfig& cfg = basis.cfg;
    if (std::abs(q) > cfg.l) throw DomainError("eigenfunction_row: |q| > l");
    int K = basis.size();
    Eigen::VectorXcd row(K);
    std::complex<double> step = std::polar(1.0, M_PI * q / cfg.l);
    std::complex<double> cur =
        std::polar(1.0 / std::sqrt(2.0 * cfg.l),
                   q * (cfg.gamma - basis.N * M_PI) / cfg.l);
    for (int i = 0; i < K; ++i) {
        row(i) = cur;
        cur *= step;
    }
    return row;
}

EnergyMatrix position_matrix(const EnergyBasis& basis, int power) {
    if (power != 1 && power != 2)
        throw InvalidParam("position_matrix: power must be 1 or 2");
    int K = basis.size();
    double l = basis.cfg.l;
    Eigen::MatrixXcd M(K, K);
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            int d = basis.kof(i) - basis.kof(j);
            if (d == 0) {
                M(i, j) = (power == 1) ? 0.0 : l * l / 3.0;
            } else {
                double sgn = (d % 2 == 0) ? 1.0 : -1.0;
                if (power == 1)
                    M(i, j) = std::complex<double>(0.0, sgn * l / (d * M_PI));
                else
                    M(i, j) = 2.0 * sgn * l * l / (d * d * M_PI * M_PI);
            }
        }
    }
    return {basis, std::move(M), 0.0};
}

QuadRule basis_quadrature(const EnergyBasis& basis, double panel_phase) {
    double omega =
        (std::abs(basis.cfg.gamma) + (basis.N + 1) * M_PI) / basis.cfg.l;
    return composite_gl(-basis.cfg.l, basis.cfg.l, panel_phase / omega);
}

} // namespace tempus
