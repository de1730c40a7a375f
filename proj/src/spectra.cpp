#include "tempus/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "tempus/hyp.hpp"
#include "tempus/quadrature.hpp"

namespace tempus {

using std::complex;

namespace {

constexpr double kGammaTol = 1e-12;
const complex<double> I{0.0, 1.0};

bool near(double a, double b) { return std::abs(a - b) < kGammaTol; }

struct SectorKind {
    bool at_half_pi;
    bool at_zero;
};

SectorKind resolve_gamma(double gamma) {
    return {near(gamma, M_PI / 2), near(gamma, 0.0)};
}

double require_arrival_s(const OperatorSpec& spec) {
    if (!spec.is_arrival())
        throw InvalidParam(
            "characteristic equations apply to the arrival family only");
    return spec.s();
}

} // namespace

CharacteristicSystem characteristic_system(double r, const OperatorSpec& spec,
                                           const SystemConfig& cfg) {
    const double s = require_arrival_s(spec);
    const double sg = std::sin(spec.gamma);
    if (std::abs(sg) < kGammaTol)
        throw SingularGamma(
            "characteristic_system: sin(gamma) underflows; use the even/odd "
            "sector forms at gamma = 0");
    const double l = cfg.l;
    const complex<double> a1 = (3.0 + I * s) / 4.0;
    const complex<double> a2 = (5.0 + I * s) / 4.0;
    const complex<double> z = -I * r;
    const complex<double> f11 = hyp_1f1(a1, 0.5, z);
    const complex<double> f13 = hyp_1f1(a1, 1.5, z);
    const complex<double> f23 = hyp_1f1(a2, 1.5, z);
    const complex<double> f25 = hyp_1f1(a2, 2.5, z);
    const complex<double> eg = std::polar(1.0, spec.gamma);
    const complex<double> egm = std::conj(eg);
    const complex<double> sp = (1.0 + I * s) / sg; // (1+is)/sin(gamma)
    const complex<double> sm = (1.0 - I * s) / (3.0 * sg);
    CharacteristicSystem c;
    c.t11 = f11 - r * egm * sp * f13;
    c.t12 = -l * f23 + r * egm * l * sm * f25;
    c.t21 = f11 + r * eg * sp * f13;
    c.t22 = l * f23 + r * eg * l * sm * f25;
    return c;
}

complex<double> alpha1_ratio(double r, const OperatorSpec& spec,
                             const SystemConfig& cfg) {
    const double s = require_arrival_s(spec);
    const double tg = std::tan(spec.gamma);
    if (std::abs(std::sin(spec.gamma)) < kGammaTol ||
        std::abs(std::cos(spec.gamma)) < kGammaTol)
        throw FormUnavailable(
            "alpha1_ratio: the general-sector form bifurcates at gamma in "
            "{0, pi/2}; use the even/odd sector forms");
    const complex<double> a1 = (3.0 + I * s) / 4.0;
    const complex<double> a2 = (5.0 + I * s) / 4.0;
    const complex<double> z = -I * r;
    const complex<double> f13 = hyp_1f1(a1, 1.5, z);
    const complex<double> f23 = hyp_1f1(a2, 1.5, z);
    const complex<double> f25 = hyp_1f1(a2, 2.5, z);
    const complex<double> num = 3.0 * f13 * (I - s) * r;
    const complex<double> den =
        cfg.l * tg * (r * (1.0 - I * s) * f25 - 3.0 * I * f23);
    return num / den;
}

complex<double> characteristic_function(double r, Sector sector,
                                        const OperatorSpec& spec,
                                        const SystemConfig& cfg) {
    const double s = require_arrival_s(spec);
    const auto kind = resolve_gamma(spec.gamma);
    const complex<double> a1 = (3.0 + I * s) / 4.0;
    const complex<double> a2 = (5.0 + I * s) / 4.0;
    const complex<double> z = -I * r;
    switch (sector) {
        case Sector::General:
            return characteristic_system(r, spec, cfg).det();
        case Sector::Odd:
            // same closed form at gamma = 0 and gamma = pi/2
            if (!kind.at_half_pi && !kind.at_zero)
                throw InvalidParam(
                    "odd sector is defined at gamma in {0, pi/2} only");
            return hyp_1f1(a2, 1.5, z) +
                   I * r * (1.0 - I * s) / 3.0 * hyp_1f1(a2, 2.5, z);
        case Sector::Even:
            if (kind.at_half_pi)
                return hyp_1f1(a1, 0.5, z) +
                       I * r * (1.0 + I * s) * hyp_1f1(a1, 1.5, z);
            if (kind.at_zero) {
                const complex<double> lead = I * r * (1.0 + I * s) / 3.0;
                const complex<double> mid =
                    (2.0 * (1.0 - I * s) - 2.0 * r * s * (3.0 + I * s) +
                     2.0 * I * r * (1.0 + s * s) / 3.0) /
                    (1.0 + 3.0 * I * s);
                return lead * hyp_2f2(1.5, a1, 0.5, 2.5, z) +
                       mid * hyp_1f1(a1, 1.5, z) + hyp_1f1(a1, 0.5, z);
            }
            throw InvalidParam(
                "even sector is defined at gamma in {0, pi/2} only");
    }
    throw InvalidParam("characteristic_function: bad sector");
}

static std::vector<double> scan_roots(const OperatorSpec& spec, Sector sector,
                                      int count, const SystemConfig& cfg,
                                      const RootScanOptions& opt) {
    if (!(opt.r_lo < opt.r_hi) || opt.r_lo * opt.r_hi <= 0.0)
        throw InvalidParam(
            "characteristic_roots: scan window must be ordered and must not "
            "straddle r = 0");
    const double sign = opt.r_lo > 0.0 ? 1.0 : -1.0;
    const double ulo = std::min(std::abs(opt.r_lo), std::abs(opt.r_hi));
    const double uhi = std::max(std::abs(opt.r_lo), std::abs(opt.r_hi));
    if (ulo < 1e-6)
        throw InvalidParam("characteristic_roots: window touches r = 0");

    auto f = [&](double r) {
        return std::abs(characteristic_function(r, sector, spec, cfg));
    };

    // geometric grid in |r|, so small-|r| roots are sampled densely; the
    // grid is walked lazily so a satisfied `count` never forces evaluation
    // at larger |r| than needed (the series guard narrows the usable range)
    const double ratio = 1.0 + opt.step_ratio;
    std::vector<double> u{ulo};
    while (u.back() * ratio < uhi) u.push_back(u.back() * ratio);
    u.push_back(uhi);
    const int n = static_cast<int>(u.size());

    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    std::vector<double> roots;
    double g0 = 0.0, g1 = 0.0;
    for (int i = 0; i < n && static_cast<int>(roots.size()) < count; ++i) {
        const double gi = f(sign * u[i]);
        if (i < 2 || !(g1 < g0 && g1 < gi)) {
            g0 = g1;
            g1 = gi;
            continue;
        }
        double a = sign * u[i - 2], b = sign * u[i];
        if (a > b) std::swap(a, b);
        const double scale = std::max(g0, gi);
        g0 = g1;
        g1 = gi;
        // golden-section minimization of |f|
        double c = b - phi * (b - a), d = a + phi * (b - a);
        double fc = f(c), fd = f(d);
        double best_x = fc < fd ? c : d, best_f = std::min(fc, fd);
        for (int it = 0; it < opt.max_refine && b - a > 1e-13 * std::abs(b);
             ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = f(d);
            }
            if (fc < best_f) best_f = fc, best_x = c;
            if (fd < best_f) best_f = fd, best_x = d;
        }
        if (best_f < opt.accept * scale) {
            roots.push_back(best_x);
        } else if (best_f < opt.reject * scale) {
            throw AmbiguousRoot(
                "characteristic_roots: refinement stalled near r = " +
                std::to_string(best_x));
        } // else: an ordinary dip of |f|, not a root
    }
    return roots;
}

std::vector<double> characteristic_roots(const OperatorSpec& spec,
                                         Sector sector, int count,
                                         const SystemConfig& cfg,
                                         const RootScanOptions& opt) {
    if (count < 1) throw InvalidParam("characteristic_roots: count >= 1");
    auto roots = scan_roots(spec, sector, count, cfg, opt);
    if (static_cast<int>(roots.size()) < count)
        throw NoRootInRange("characteristic_roots: window [" +
                            std::to_string(opt.r_lo) + ", " +
                            std::to_string(opt.r_hi) + "] holds only " +
                            std::to_string(roots.size()) + " roots");
    return roots;
}

std::vector<double> characteristic_roots_within(const OperatorSpec& spec,
                                                Sector sector,
                                                const SystemConfig& cfg,
                                                const RootScanOptions& opt) {
    return scan_roots(spec, sector, std::numeric_limits<int>::max(), cfg, opt);
}

Eigenpair route_b_pair(double r, Sector sector, const OperatorSpec& spec,
                       const SystemConfig& cfg) {
    if (r == 0.0) throw InvalidParam("route_b_pair: r must be nonzero");
    require_arrival_s(spec);
    ClosedForm form;
    form.r = r;
    form.sector = sector;
    if (sector == Sector::General) form.alpha1 = alpha1_ratio(r, spec, cfg);
    Eigenpair pair;
    pair.tau = cfg.mu * cfg.l * cfg.l / (2.0 * cfg.hbar * r);
    pair.closed_form = form;
    return pair;
}

std::vector<Eigenpair> diagonalize(const EnergyMatrix& m, double herm_tol) {
    const int K = m.basis.size();
    double defect = 0.0;
    for (int i = 0; i < K; ++i)
        for (int j = i; j < K; ++j)
            defect = std::max(
                defect, std::abs(m.entries(i, j) - std::conj(m.entries(j, i))));
    if (defect > herm_tol)
        throw NotHermitian("diagonalize: Hermiticity defect " +
                           std::to_string(defect));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.entries);
    if (es.info() != Eigen::Success)
        throw NonConvergent("diagonalize: eigensolver failed");

    std::vector<int> order(K);
    for (int i = 0; i < K; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ta = es.eigenvalues()[a], tb = es.eigenvalues()[b];
        if (std::abs(ta) != std::abs(tb)) return std::abs(ta) < std::abs(tb);
        return ta < tb;
    });

    std::vector<Eigenpair> out;
    out.reserve(K);
    for (int idx : order) {
        Eigenpair p;
        p.tau = es.eigenvalues()[idx];
        p.coeffs = es.eigenvectors().col(idx);
        int imax = 0;
        for (int i = 1; i < K; ++i)
            if (std::abs(p.coeffs[i]) > std::abs(p.coeffs[imax])) imax = i;
        double mag = std::abs(p.coeffs[imax]);
        if (mag > 0.0) p.coeffs *= std::conj(p.coeffs[imax]) / mag;
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

// closed-form evaluator on [-l, l]; A0 = 1 before normalization
complex<double> closed_form_value(double q, const ClosedForm& form, double s,
                                  double gamma, const SystemConfig& cfg) {
    const complex<double> a1 = (3.0 + I * s) / 4.0;
    const complex<double> a2 = (5.0 + I * s) / 4.0;
    const double l = cfg.l;
    const complex<double> zq = -I * form.r * q * q / (l * l);
    const auto kind = resolve_gamma(gamma);
    switch (form.sector) {
        case Sector::Odd:
            if (!kind.at_half_pi && !kind.at_zero)
                throw FormUnavailable(
                    "odd closed form exists at gamma in {0, pi/2} only");
            return q * hyp_1f1(a2, 1.5, zq);
        case Sector::Even:
            if (kind.at_half_pi) return hyp_1f1(a1, 0.5, zq);
            if (kind.at_zero)
                return hyp_1f1(a1, 0.5, zq) +
                       2.0 * (1.0 - I * s) / (1.0 + 3.0 * I * s) *
                           hyp_1f1(a1, 1.5, -I * form.r);
            throw FormUnavailable(
                "even closed form exists at gamma in {0, pi/2} only");
        case Sector::General:
            if (kind.at_half_pi || kind.at_zero)
                throw FormUnavailable(
                    "general closed form bifurcates at gamma in {0, pi/2}");
            return hyp_1f1(a1, 0.5, zq) +
                   form.alpha1 * q * hyp_1f1(a2, 1.5, zq);
    }
    throw InvalidParam("closed_form_value: bad sector");
}

} // namespace

AssembledForm assemble_eigenfunction(const Eigenpair& pair,
                                     const OperatorSpec& spec,
                                     const std::vector<double>& qgrid,
                                     const SystemConfig& cfg) {
    if (!pair.closed_form)
        throw InvalidParam("assemble_eigenfunction: no closed form attached");
    const double s = require_arrival_s(spec);
    const ClosedForm& form = *pair.closed_form;
    for (double q : qgrid)
        if (std::abs(q) > cfg.l)
            throw DomainError("assemble_eigenfunction: |q| > l in qgrid");

    // internal normalization grid dense enough for both the closed form's
    // local frequency 2|r||q|/l^2 and (when present) the route-A synthesis
    double omega = 2.0 * std::abs(form.r) / cfg.l + M_PI / cfg.l;
    const int K = static_cast<int>(pair.coeffs.size());
    const int N = K > 0 ? (K - 1) / 2 : 0;
    if (K > 0)
        omega = std::max(omega,
                         (std::abs(cfg.gamma) + (N + 1) * M_PI) / cfg.l);
    QuadRule grid = composite_gl(-cfg.l, cfg.l, 8.0 / omega, 16);

    std::vector<complex<double>> fb(grid.x.size());
    double norm2 = 0.0;
    for (size_t j = 0; j < grid.x.size(); ++j) {
        fb[j] = closed_form_value(grid.x[j], form, s, spec.gamma, cfg);
        norm2 += grid.w[j] * std::norm(fb[j]);
    }
    const double norm = std::sqrt(norm2);
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NonConvergent("assemble_eigenfunction: normalization failed");

    AssembledForm out;
    out.values.resize(static_cast<Eigen::Index>(qgrid.size()));
    for (size_t j = 0; j < qgrid.size(); ++j)
        out.values[static_cast<Eigen::Index>(j)] =
            closed_form_value(qgrid[j], form, s, spec.gamma, cfg) / norm;

    if (K > 0) {
        if (K != 2 * N + 1)
            throw InvalidParam("assemble_eigenfunction: bad coefficient size");
        EnergyBasis basis(cfg, N);
        complex<double> ov = 0.0;
        Eigen::VectorXcd cb = Eigen::VectorXcd::Zero(K);
        for (size_t j = 0; j < grid.x.size(); ++j) {
            Eigen::VectorXcd row = eigenfunction_row(basis, grid.x[j]);
            complex<double> fa = row.cwiseProduct(pair.coeffs).sum();
            complex<double> fbn = fb[j] / norm;
            ov += grid.w[j] * std::conj(fbn) * fa;
            cb += (grid.w[j] * fbn) * row.conjugate();
        }
        out.overlap = std::abs(ov);
        out.span_norm = cb.norm();
    }
    return out;
}

double parity_overlap(const Eigen::VectorXcd& coeffs,
                      const EnergyBasis& basis) {
    const int K = basis.size();
    if (coeffs.size() != K)
        throw InvalidParam("parity_overlap: coefficient size mismatch");
    const bool half_pi = near(basis.cfg.gamma, M_PI / 2);
    const bool zero = near(basis.cfg.gamma, 0.0);
    if (!half_pi && !zero)
        throw InvalidParam(
            "parity_overlap: defined at gamma in {0, pi/2} only");
    complex<double> acc = 0.0;
    double n2 = 0.0;
    for (int i = 0; i < K; ++i) {
        int k = basis.kof(i);
        int kp = half_pi ? -k - 1 : -k; // image index under q -> -q
        complex<double> pc =
            kp >= -basis.N && kp <= basis.N ? coeffs[basis.idx(kp)] : 0.0;
        acc += std::conj(coeffs[i]) * pc;
        n2 += std::norm(coeffs[i]);
    }
    if (n2 == 0.0) throw InvalidParam("parity_overlap: zero vector");
    return acc.real() / n2;
}

Sector classify_parity(const Eigen::VectorXcd& coeffs,
                       const EnergyBasis& basis, double threshold) {
    double p = parity_overlap(coeffs, basis);
    if (p > threshold) return Sector::Even;
    if (p < -threshold) return Sector::Odd;
    return Sector::General;
}

CanonicalTrialVector CanonicalTrialVector::make(const EnergyBasis& basis,
                                                unsigned seed, int margin) {
    const int K = basis.size();
    if (2 * margin + 2 > K)
        throw InvalidParam("CanonicalTrialVector: margin leaves no support");
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CanonicalTrialVector t;
    t.coeffs = Eigen::VectorXcd::Zero(K);
    complex<double> sum = 0.0;
    for (int i = margin; i < K - margin; ++i) {
        t.coeffs[i] = complex<double>{gauss(rng), gauss(rng)};
        sum += t.coeffs[i];
    }
    const int support = K - 2 * margin;
    for (int i = margin; i < K - margin; ++i)
        t.coeffs[i] -= sum / static_cast<double>(support);
    double n = t.coeffs.norm();
    if (!(n > 0.0))
        throw InvalidParam("CanonicalTrialVector: degenerate draw");
    t.coeffs /= n;
    return t;
}

bool CanonicalTrialVector::canonical(const EnergyBasis& basis,
                                     int margin) const {
    const int K = basis.size();
    if (coeffs.size() != K) return false;
    complex<double> sum = 0.0;
    double l1 = 0.0;
    for (int i = 0; i < K; ++i) {
        if ((i < margin || i >= K - margin) && coeffs[i] != 0.0) return false;
        sum += coeffs[i];
        l1 += std::abs(coeffs[i]);
    }
    return l1 > 0.0 && std::abs(sum) <= 1e-10 * l1;
}

double ccr_residual(const EnergyMatrix& m, const Eigen::VectorXcd& trial,
                    int sign) {
    if (sign != 1 && sign != -1)
        throw InvalidParam("ccr_residual: sign must be +1 or -1");
    const int K = m.basis.size();
    if (trial.size() != K)
        throw InvalidParam("ccr_residual: trial size mismatch");
    double cn = trial.norm();
    if (!(cn > 0.0)) throw InvalidParam("ccr_residual: zero trial vector");
    // (TH - HT)_{kj} = T_{kj} (E_j - E_k): the diagonal of T drops out
    // symbolically, so large diagonal entries cannot wash out the residual
    // through cancellation in a numeric TH - HT difference
    std::vector<double> E(K);
    for (int i = 0; i < K; ++i) E[i] = energy(m.basis.kof(i), m.basis.cfg);
    const complex<double> ih{0.0, m.basis.cfg.hbar};
    Eigen::VectorXcd res(K);
    for (int k = 0; k < K; ++k) {
        complex<double> acc = 0.0;
        for (int j = 0; j < K; ++j)
            acc += m.entries(k, j) * ((E[j] - E[k]) * trial[j]);
        res[k] = acc - static_cast<double>(sign) * ih * trial[k];
    }
    return res.norm() / cn;
}

int match_nearest(const std::vector<double>& taus, double tau, double guard) {
    int best = -1;
    double bd = 0.0;
    for (size_t i = 0; i < taus.size(); ++i) {
        double d = std::abs(taus[i] - tau);
        if (best < 0 || d < bd) {
            best = static_cast<int>(i);
            bd = d;
        }
    }
    if (best >= 0 && bd <= guard * std::abs(tau)) return best;
    return -1;
}

} // namespace tempus
