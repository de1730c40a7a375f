#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "tempus/system.hpp"

using namespace tempus;
using std::complex;

TEST_CASE("energies") {
    SystemConfig cfg;
    cfg.gamma = M_PI / 2;
    CHECK(energy(0, cfg) == doctest::Approx(M_PI * M_PI / 8).epsilon(1e-14));
    CHECK(energy(1, cfg) ==
          doctest::Approx(9 * M_PI * M_PI / 8).epsilon(1e-14));
    cfg.gamma = 0.0;
    CHECK(energy(0, cfg) == 0.0);
    // E_{k,gamma} = E_{-k,-gamma}, exact
    SystemConfig plus, minus;
    plus.gamma = 0.7;
    minus.gamma = -0.7;
    for (int k = -50; k <= 50; ++k)
        CHECK(energy(k, plus) == energy(-k, minus));
}

TEST_CASE("eigenfunction values and boundary condition") {
    SystemConfig cfg;
    cfg.gamma = 0.35;
    CHECK(std::abs(eigenfunction(0, 0.0, cfg) - complex<double>(M_SQRT1_2, 0)) <
          1e-15);
    complex<double> ratio =
        eigenfunction(0, cfg.l, cfg) / eigenfunction(0, -cfg.l, cfg);
    CHECK(std::abs(ratio - std::polar(1.0, 2 * cfg.gamma)) < 1e-14);
    cfg.gamma = M_PI / 2;
    complex<double> want = std::polar(M_SQRT1_2, 3 * M_PI / 4);
    CHECK(std::abs(eigenfunction(1, 0.5, cfg) - want) < 1e-14);
    CHECK(std::abs(std::abs(eigenfunction(7, 0.23, cfg)) - M_SQRT1_2) < 1e-15);
    CHECK_THROWS_AS((void)eigenfunction(0, 1.5, cfg), DomainError);
}

TEST_CASE("eigenfunction_row matches pointwise evaluation") {
    EnergyBasis basis(SystemConfig{1, 1, 1, 0.9}, 30);
    for (double q : {-1.0, -0.377, 0.0, 0.61, 1.0}) {
        Eigen::VectorXcd row = eigenfunction_row(basis, q);
        for (int k : {-30, -7, 0, 13, 30})
            CHECK(std::abs(row(basis.idx(k)) -
                           eigenfunction(k, q, basis.cfg)) < 1e-13);
    }
}

TEST_CASE("orthonormality under the module quadrature") {
    EnergyBasis basis(SystemConfig{1, 1, 1, M_PI / 2}, 50);
    QuadRule rule = basis_quadrature(basis);
    double worst = 0.0;
    for (int k : {-50, -31, -1, 0, 1, 17, 50}) {
        for (int kp : {-50, -2, 0, 1, 29, 50}) {
            complex<double> s = 0.0;
            for (size_t j = 0; j < rule.x.size(); ++j)
                s += rule.w[j] *
                     std::conj(eigenfunction(k, rule.x[j], basis.cfg)) *
                     eigenfunction(kp, rule.x[j], basis.cfg);
            double want = (k == kp) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(s - want));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("position matrices: anchors, structure, quadrature cross-check") {
    EnergyBasis basis(SystemConfig{1, 1, 1, 1.1}, 50);
    EnergyMatrix X1 = position_matrix(basis, 1);
    EnergyMatrix X2 = position_matrix(basis, 2);

    // exact symbolic anchors (l = 1)
    CHECK(std::abs(X1.entries(basis.idx(0), basis.idx(1)) -
                   complex<double>(0, 1 / M_PI)) < 1e-15);
    CHECK(std::abs(X1.entries(basis.idx(2), basis.idx(-1)) -
                   complex<double>(0, -1 / (3 * M_PI))) < 1e-15);
    CHECK(std::abs(X2.entries(basis.idx(0), basis.idx(2)) -
                   complex<double>(1 / (2 * M_PI * M_PI), 0)) < 1e-15);
    for (int k = -50; k <= 50; ++k) {
        CHECK(X1.entries(basis.idx(k), basis.idx(k)) == complex<double>(0, 0));
        CHECK(X2.entries(basis.idx(k), basis.idx(k)) ==
              complex<double>(1.0 / 3.0, 0));
    }
    // Hermiticity is exact by construction
    for (int i = 0; i < basis.size(); i += 7)
        for (int j = 0; j < basis.size(); j += 5)
            CHECK(X1.entries(i, j) == std::conj(X1.entries(j, i)));

    // gamma-independence (phases cancel in the integrand)
    EnergyBasis other(SystemConfig{1, 1, 1, -2.6}, 50);
    CHECK(position_matrix(other, 1).entries == X1.entries);

    // closed forms vs adaptive quadrature, including fast oscillations
    auto quad_entry = [&](int k, int kp, int pow) {
        return integrate_adaptive(
            [&](double q) {
                return std::conj(eigenfunction(k, q, basis.cfg)) *
                       std::pow(q, pow) * eigenfunction(kp, q, basis.cfg);
            },
            -1.0, 1.0, 1e-13);
    };
    for (auto [k, kp] : {std::pair{0, 1}, {3, -4}, {-50, 50}, {41, 40},
                         {17, 17}, {-23, 8}}) {
        CHECK(std::abs(quad_entry(k, kp, 1) -
                       X1.entries(basis.idx(k), basis.idx(kp))) < 1e-10);
        CHECK(std::abs(quad_entry(k, kp, 2) -
                       X2.entries(basis.idx(k), basis.idx(kp))) < 1e-10);
    }
}

TEST_CASE("gamma reduction and validation") {
    CHECK(reduce_gamma(0.0) == 0.0);
    CHECK(reduce_gamma(2 * M_PI + 0.25) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(reduce_gamma(-M_PI / 2) == doctest::Approx(-M_PI / 2));
    CHECK(reduce_gamma(M_PI) == doctest::Approx(M_PI));
    CHECK(reduce_gamma(3.5 * M_PI) == doctest::Approx(-M_PI / 2));
    SystemConfig bad;
    bad.l = -1.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParam);
    CHECK_THROWS_AS(EnergyBasis(SystemConfig{1, 1, 1, 0.5}, 0), InvalidParam);
}

TEST_CASE("degeneracy flag") {
    CHECK(EnergyBasis(SystemConfig{1, 1, 1, 0.0}, 5).degenerate());
    CHECK(EnergyBasis(SystemConfig{1, 1, 1, M_PI / 2}, 5).degenerate());
    CHECK(EnergyBasis(SystemConfig{1, 1, 1, -M_PI / 2}, 5).degenerate());
    CHECK_FALSE(EnergyBasis(SystemConfig{1, 1, 1, M_PI / 4}, 5).degenerate());
    // gamma = pi/2 collision is bit-exact: E_0 == E_{-1}
    SystemConfig g{1, 1, 1, M_PI / 2};
    CHECK(energy(0, g) == energy(-1, g));
}
