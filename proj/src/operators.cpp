#include "tempus/operators.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tempus {

using std::complex;

AlphaSequence AlphaSequence::power_law(double c, double p) {
    AlphaSequence a;
    a.rule = Rule::PowerLaw;
    a.c = c;
    a.p = p;
    return a;
}

AlphaSequence AlphaSequence::explicit_table(std::map<int, double> t) {
    AlphaSequence a;
    a.rule = Rule::Explicit;
    a.table = std::move(t);
    return a;
}

double AlphaSequence::value(int k, const SystemConfig& cfg) const {
    switch (rule) {
        case Rule::Zero:
            return 0.0;
        case Rule::PowerLaw: {
            double v = c * std::pow(energy(k, cfg), -p);
            if (!std::isfinite(v))
                throw InvalidParam("AlphaSequence: power law diverges at E_k");
            return v;
        }
        case Rule::Explicit: {
            auto it = table.find(k);
            return it == table.end() ? 0.0 : it->second;
        }
    }
    return 0.0;
}

std::string AlphaSequence::describe() const {
    char buf[64];
    switch (rule) {
        case Rule::Zero:
            return "zero";
        case Rule::PowerLaw:
            std::snprintf(buf, sizeof buf, "power:%g,%g", c, p);
            return buf;
        case Rule::Explicit:
            std::snprintf(buf, sizeof buf, "explicit:%zu", table.size());
            return buf;
    }
    return "?";
}

std::string OperatorSpec::describe() const {
    char buf[96];
    if (is_arrival())
        std::snprintf(buf, sizeof buf, "arrival s=%g gamma=%.12g", s(), gamma);
    else
        std::snprintf(buf, sizeof buf, "characteristic alpha=%s gamma=%.12g",
                      alpha().describe().c_str(), gamma);
    return buf;
}

complex<double> arrival_kernel_branch(double q, double qp, int sgn,
                                      const OperatorSpec& spec,
                                      const SystemConfig& cfg) {
    if (!spec.is_arrival())
        throw InvalidParam("arrival_kernel: spec is not an arrival operator");
    if (std::abs(q) > cfg.l || std::abs(qp) > cfg.l)
        throw DomainError("arrival_kernel: |q| > l");
    const double s = spec.s();
    const complex<double> lin{q + qp + 0.0, s * (q - qp)};
    if (spec.gamma == 0.0) {
        const complex<double> i{0.0, 1.0};
        double pref = cfg.mu / (4.0 * cfg.hbar);
        complex<double> corr{q * q - qp * qp, -s * (q - qp) * (q - qp)};
        return -i * pref * lin * static_cast<double>(sgn) +
               i * (pref / cfg.l) * corr;
    }
    double sg = std::sin(spec.gamma);
    if (std::abs(sg) < 1e-12)
        throw SingularGamma("arrival_kernel: sin(gamma) underflows");
    complex<double> dir{std::cos(spec.gamma), sg * sgn};
    return -(cfg.mu / (4.0 * cfg.hbar * sg)) * dir * lin;
}

complex<double> arrival_kernel(double q, double qp, const OperatorSpec& spec,
                               const SystemConfig& cfg) {
    double d = q - qp;
    int sg = (d > 0) - (d < 0);
    if (sg != 0) return arrival_kernel_branch(q, qp, sg, spec, cfg);
    // H(0) = 1/2, sgn(0) = 0: the diagonal is the mean of the one-sided limits
    return 0.5 * (arrival_kernel_branch(q, qp, +1, spec, cfg) +
                  arrival_kernel_branch(q, qp, -1, spec, cfg));
}

namespace {

void require_same_gamma(const OperatorSpec& spec, const EnergyBasis& basis) {
    if (std::abs(spec.gamma - basis.cfg.gamma) > 1e-15)
        throw InvalidParam("operator gamma does not match the basis gamma");
}

} // namespace

complex<double> gto_entry(int k, int kp, const OperatorSpec& spec,
                          const SystemConfig& cfg) {
    if (spec.is_arrival())
        throw InvalidParam("gto_entry: spec is not a characteristic operator");
    if (k == kp) return {spec.alpha().value(k, cfg), 0.0};
    // caller guarantees E_k != E_k'
    return complex<double>{0.0, cfg.hbar} / (energy(k, cfg) - energy(kp, cfg));
}

EnergyMatrix gto_matrix(const OperatorSpec& spec, const EnergyBasis& basis) {
    if (spec.is_arrival())
        throw InvalidParam("gto_matrix: spec is not a characteristic operator");
    require_same_gamma(spec, basis);
    const int K = basis.size();
    for (int i = 0; i < K; ++i) {
        double Ei = energy(basis.kof(i), basis.cfg);
        for (int j = i + 1; j < K; ++j) {
            double Ej = energy(basis.kof(j), basis.cfg);
            if (std::abs(Ei - Ej) < 1e-12 * std::max(1.0, std::abs(Ei)))
                throw DegenerateSpectrum(
                    "gto_matrix: E_k collision in the truncation window "
                    "(gamma too close to 0, +/-pi/2 or pi)");
        }
    }
    Eigen::MatrixXcd M(K, K);
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j)
            M(i, j) = gto_entry(basis.kof(i), basis.kof(j), spec, basis.cfg);
    return {basis, std::move(M), 0.0};
}

EnergyMatrix project_kernel(const OperatorSpec& spec, const EnergyBasis& basis,
                            const ProjectionOptions& opt) {
    if (!spec.is_arrival())
        throw InvalidParam("project_kernel: spec is not an arrival operator");
    require_same_gamma(spec, basis);
    // probe the kernel once up front: a singular gamma must surface here,
    // serially, not from inside the parallel loops below
    (void)arrival_kernel_branch(0.0, 0.5 * basis.cfg.l, +1, spec, basis.cfg);
    const SystemConfig& cfg = basis.cfg;
    const int K = basis.size();
    const double l = cfg.l;
    const double omega = (std::abs(cfg.gamma) + (basis.N + 1) * M_PI) / l;
    const double h = opt.panel_phase / omega;

    QuadRule outer = composite_gl(-l, l, h, opt.nodes_per_panel);
    const int M = static_cast<int>(outer.x.size());

    // phase 1: per outer node, the inner integrals over both triangles
    //   G[i][k'] = int_{-l}^{q_i} K_+(q_i,y) phi_k'(y) dy
    //            + int_{q_i}^{l}  K_-(q_i,y) phi_k'(y) dy
    // and the weighted conjugate basis row PW[i][k] = w_i conj(phi_k(q_i)).
    // Each i is independent; the reduction in phase 2 runs in fixed i order,
    // so serial and OpenMP execution produce bit-identical matrices.
    std::vector<complex<double>> G(static_cast<size_t>(M) * K);
    std::vector<complex<double>> PW(static_cast<size_t>(M) * K);

    auto work_row = [&](int i) {
        const double qi = outer.x[i];
        complex<double>* g = &G[static_cast<size_t>(i) * K];
        complex<double>* pw = &PW[static_cast<size_t>(i) * K];
        const double norm = 1.0 / std::sqrt(2.0 * l);
        for (int a = 0; a < K; ++a) g[a] = 0.0;
        for (int tri = 0; tri < 2; ++tri) {
            const int sgn = tri == 0 ? +1 : -1;
            const double lo = tri == 0 ? -l : qi;
            const double hi = tri == 0 ? qi : l;
            if (!(hi > lo)) continue;
            QuadRule inner = composite_gl(lo, hi, h, opt.nodes_per_panel);
            for (size_t j = 0; j < inner.x.size(); ++j) {
                const double y = inner.x[j];
                complex<double> f =
                    inner.w[j] * arrival_kernel_branch(qi, y, sgn, spec, cfg);
                complex<double> step = std::polar(1.0, M_PI * y / l);
                complex<double> cur = std::polar(
                    norm, y * (cfg.gamma - basis.N * M_PI) / l);
                for (int a = 0; a < K; ++a) {
                    g[a] += f * cur;
                    cur *= step;
                }
            }
        }
        complex<double> step = std::polar(1.0, -M_PI * qi / l);
        complex<double> cur = std::polar(
            outer.w[i] * norm, -qi * (cfg.gamma - basis.N * M_PI) / l);
        for (int a = 0; a < K; ++a) {
            pw[a] = cur;
            cur *= step;
        }
    };

    if (opt.exec == ExecPolicy::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int i = 0; i < M; ++i) work_row(i);
    } else {
        for (int i = 0; i < M; ++i) work_row(i);
    }

    // phase 2: T(a,b) = sum_i PW[i][a] * G[i][b], fixed ascending i
    Eigen::MatrixXcd T(K, K);
    auto fill_row = [&](int a) {
        for (int b = 0; b < K; ++b) {
            complex<double> acc = 0.0;
            const complex<double>* pw = &PW[static_cast<size_t>(0) * K + a];
            const complex<double>* g = &G[static_cast<size_t>(0) * K + b];
            for (int i = 0; i < M; ++i)
                acc += pw[static_cast<size_t>(i) * K] *
                       g[static_cast<size_t>(i) * K];
            T(a, b) = acc;
        }
    };
    if (opt.exec == ExecPolicy::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int a = 0; a < K; ++a) fill_row(a);
    } else {
        for (int a = 0; a < K; ++a) fill_row(a);
    }

    double defect = 0.0;
    for (int a = 0; a < K; ++a)
        for (int b = a; b < K; ++b)
            defect = std::max(defect,
                              std::abs(T(a, b) - std::conj(T(b, a))));
    if (defect > opt.defect_tol)
        throw QuadratureFailure("project_kernel: Hermiticity defect " +
                                std::to_string(defect));
    Eigen::MatrixXcd H = 0.5 * (T + T.adjoint().eval());
    return {basis, std::move(H), defect};
}

} // namespace tempus
