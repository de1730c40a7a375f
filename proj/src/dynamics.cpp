#include "tempus/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace tempus {

using std::complex;

EvolvingState::EvolvingState(EnergyBasis b, Eigen::VectorXcd c)
    : basis(std::move(b)), coeffs(std::move(c)) {
    if (coeffs.size() != basis.size())
        throw InvalidParam("EvolvingState: coefficient size mismatch");
    double n = coeffs.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw InvalidParam("EvolvingState: coefficients not normalizable");
    coeffs /= n;
}

namespace {

Eigen::VectorXcd phase_apply(const Eigen::VectorXcd& c,
                             const EnergyBasis& basis, double t) {
    const int K = basis.size();
    Eigen::VectorXcd out(K);
    for (int i = 0; i < K; ++i) {
        double ph = -energy(basis.kof(i), basis.cfg) * t / basis.cfg.hbar;
        out[i] = c[i] * std::polar(1.0, ph);
    }
    return out;
}

// first index attaining the extremum up to a roundoff-sized tolerance, so
// that a series flat to machine precision breaks toward the grid start
int first_extremum(const std::vector<double>& y, bool minimize) {
    double lo = *std::min_element(y.begin(), y.end());
    double hi = *std::max_element(y.begin(), y.end());
    double tol = 1e-12 * std::max(std::abs(lo), std::abs(hi));
    double target = minimize ? lo + tol : hi - tol;
    for (int i = 0; i < static_cast<int>(y.size()); ++i)
        if (minimize ? y[i] <= target : y[i] >= target) return i;
    return 0;
}

// vertex of the parabola through three neighbouring samples; falls back to
// the grid point at the boundary or when the fit degenerates
double refine_vertex(const std::vector<double>& t, const std::vector<double>& y,
                     int i) {
    if (i <= 0 || i + 1 >= static_cast<int>(t.size())) return t[i];
    double dl = t[i] - t[i - 1], dr = t[i + 1] - t[i];
    double yl = y[i - 1] - y[i], yr = y[i + 1] - y[i];
    double den = yl * dr + yr * dl;
    if (den == 0.0) return t[i];
    double shift = 0.5 * (yl * dr * dr - yr * dl * dl) / den;
    return std::clamp(t[i] + shift, t[i - 1], t[i + 1]);
}

} // namespace

EvolvingState evolve(const EvolvingState& state, double t) {
    EvolvingState out = state;
    out.coeffs = phase_apply(state.coeffs, state.basis, t);
    return out;
}

CarpetGrid carpet(const EvolvingState& state, const std::vector<double>& qgrid,
                  const std::vector<double>& tgrid, double norm_tol) {
    if (qgrid.empty() || tgrid.empty())
        throw InvalidParam("carpet: empty grid");
    const SystemConfig& cfg = state.basis.cfg;
    for (double q : qgrid)
        if (std::abs(q) > cfg.l) throw DomainError("carpet: |q| > l in qgrid");

    const int K = state.basis.size();
    const int Q = static_cast<int>(qgrid.size());
    const int T = static_cast<int>(tgrid.size());

    Eigen::MatrixXcd at_q(Q, K);
    for (int j = 0; j < Q; ++j)
        at_q.row(j) = eigenfunction_row(state.basis, qgrid[j]).transpose();

    // the norm check integrates on its own grid: a coarse user qgrid must
    // not be able to hide drift (or fake it)
    QuadRule rule = basis_quadrature(state.basis);
    const int G = static_cast<int>(rule.x.size());
    Eigen::MatrixXcd at_g(G, K);
    for (int j = 0; j < G; ++j)
        at_g.row(j) = eigenfunction_row(state.basis, rule.x[j]).transpose();

    CarpetGrid out;
    out.qgrid = qgrid;
    out.tgrid = tgrid;
    out.density.resize(T, Q);
    std::vector<double> drift(T, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < T; ++i) {
        Eigen::VectorXcd ct = phase_apply(state.coeffs, state.basis, tgrid[i]);
        Eigen::VectorXcd psi = at_q * ct;
        for (int j = 0; j < Q; ++j) out.density(i, j) = std::norm(psi[j]);
        Eigen::VectorXcd chk = at_g * ct;
        double norm = 0.0;
        for (int j = 0; j < G; ++j) norm += rule.w[j] * std::norm(chk[j]);
        drift[i] = std::abs(norm - 1.0);
    }

    double worst = *std::max_element(drift.begin(), drift.end());
    if (worst > norm_tol)
        throw NormDrift("carpet: time-slice norm drifted by " +
                        std::to_string(worst));
    return out;
}

VarianceSeries variance_series(const EvolvingState& state,
                               const std::vector<double>& tgrid,
                               std::optional<double> tau) {
    if (tgrid.empty()) throw InvalidParam("variance_series: empty tgrid");
    EnergyMatrix x1 = position_matrix(state.basis, 1);
    EnergyMatrix x2 = position_matrix(state.basis, 2);

    auto sigma2_at = [&](double t) {
        Eigen::VectorXcd ct = phase_apply(state.coeffs, state.basis, t);
        double m1 = std::real(complex<double>(ct.dot(x1.entries * ct)));
        double m2 = std::real(complex<double>(ct.dot(x2.entries * ct)));
        return m2 - m1 * m1;
    };

    VarianceSeries out;
    out.tgrid = tgrid;
    out.sigma2.resize(tgrid.size());
    const int T = static_cast<int>(tgrid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < T; ++i) out.sigma2[i] = sigma2_at(tgrid[i]);

    int imin = first_extremum(out.sigma2, true);
    out.t_min = refine_vertex(tgrid, out.sigma2, imin);
    out.sigma2_min = sigma2_at(out.t_min);
    if (tau) {
        out.tau = tau;
        out.sigma2_at_tau = sigma2_at(*tau);
    }
    return out;
}

TransitionSeries transition_series(const Eigenpair& from, const Eigenpair& to,
                                   const std::vector<double>& tgrid,
                                   const EnergyBasis& basis,
                                   std::pair<int, int> pair_ids) {
    if (tgrid.empty()) throw InvalidParam("transition_series: empty tgrid");
    const int K = basis.size();
    if (from.coeffs.size() != K || to.coeffs.size() != K)
        throw InvalidParam("transition_series: coefficient size mismatch");

    // P_t = |sum_k conj(to_k) e^{-i E_k t / hbar} from_k|^2
    Eigen::VectorXcd d(K);
    std::vector<double> e(K);
    for (int i = 0; i < K; ++i) {
        d[i] = std::conj(to.coeffs[i]) * from.coeffs[i];
        e[i] = energy(basis.kof(i), basis.cfg);
    }

    TransitionSeries out;
    out.tgrid = tgrid;
    out.prob.resize(tgrid.size());
    out.pair = pair_ids;
    const int T = static_cast<int>(tgrid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < T; ++i) {
        complex<double> acc = 0.0;
        for (int k = 0; k < K; ++k)
            acc += d[k] * std::polar(1.0, -e[k] * tgrid[i] / basis.cfg.hbar);
        out.prob[i] = std::norm(acc);
    }

    int imax = first_extremum(out.prob, false);
    out.t_max = refine_vertex(tgrid, out.prob, imax);
    out.peak = out.prob[imax];
    return out;
}

TransitionStudy transition_study(const std::vector<Eigenpair>& pairs,
                                 const EnergyBasis& basis, int count,
                                 int samples) {
    if (count < 2 || static_cast<int>(pairs.size()) < count)
        throw InvalidParam("transition_study: need at least two eigenpairs");
    TransitionStudy out;
    for (int i = 0; i + 1 < count; ++i) {
        int lo = i, hi = i + 1;
        if (pairs[lo].tau > pairs[hi].tau) std::swap(lo, hi);
        double dtau = pairs[hi].tau - pairs[lo].tau;
        auto tg = linspace(0.0, 2.0 * dtau, samples);
        out.series.push_back(
            transition_series(pairs[lo], pairs[hi], tg, basis, {lo, hi}));
        out.dtau.push_back(dtau);
        out.tmax.push_back(out.series.back().t_max);
        out.min_peak = std::min(out.min_peak, out.series.back().peak);
    }

    const int n = static_cast<int>(out.dtau.size());
    double xm = 0.0, ym = 0.0;
    for (int i = 0; i < n; ++i) xm += out.dtau[i], ym += out.tmax[i];
    xm /= n, ym /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (out.dtau[i] - xm) * (out.dtau[i] - xm);
        sxy += (out.dtau[i] - xm) * (out.tmax[i] - ym);
    }
    if (!(sxx > 0.0))
        throw NonConvergent("transition_study: eigenvalue gaps do not spread");
    out.slope = sxy / sxx;
    out.intercept = ym - out.slope * xm;
    return out;
}

std::vector<double> linspace(double lo, double hi, int samples) {
    if (samples < 2) throw InvalidParam("linspace: need at least two samples");
    std::vector<double> v(samples);
    for (int i = 0; i < samples; ++i)
        v[i] = lo + (hi - lo) * i / (samples - 1);
    return v;
}

} // namespace tempus
