// Acceptance evaluation: eight numbered criteria, one verdict line each.
// Every verdict is measured at runtime; a criterion the toolkit cannot meet
// at this scale prints FAIL together with the numbers that say why. The
// process exit code reports whether the evaluation itself completed, not
// whether every criterion passed, so the honest FAILs stay visible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tempus/dynamics.hpp"
#include "tempus/hyp.hpp"
#include "tempus/operators.hpp"
#include "tempus/quadrature.hpp"
#include "tempus/spectra.hpp"
#include "tempus/symmetry.hpp"

using namespace tempus;
using cplxd = std::complex<double>;

namespace {

int g_passed = 0;
int g_failed = 0;

void verdict(int id, bool pass, const std::string& text) {
    std::printf("[%s] criterion %d — %s\n", pass ? "PASS" : "FAIL", id,
                text.c_str());
    (pass ? g_passed : g_failed)++;
}

SystemConfig config_at(double gamma) {
    SystemConfig cfg;
    cfg.gamma = gamma;
    return cfg;
}

EnergyMatrix build(const OperatorSpec& spec, const EnergyBasis& basis) {
    return spec.is_arrival() ? project_kernel(spec, basis)
                             : gto_matrix(spec, basis);
}

// positive-branch eigenvalues in the requested parity class, largest tau
// first (rung order)
struct Rung {
    int index;
    double tau;
};

std::vector<Rung> rungs_of(const std::vector<Eigenpair>& pairs,
                           const EnergyBasis& basis, Sector sector) {
    std::vector<Rung> out;
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
        if (pairs[i].tau <= 0.0) continue;
        if (classify_parity(pairs[i].coeffs, basis) != sector) continue;
        out.push_back({i, pairs[i].tau});
    }
    std::sort(out.begin(), out.end(),
              [](const Rung& a, const Rung& b) { return a.tau > b.tau; });
    return out;
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ------------------------------------------------------------- criterion 1

void criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    std::printf("\n--- criterion 1: two-route eigenvalue agreement "
                "(gamma = pi/2, five rungs per parity sector) ---\n");
    const SystemConfig cfg = config_at(M_PI / 2);
    bool all_small = true, all_improve = true;
    double worst50 = 0.0, worst100 = 0.0;
    for (double s : {0.0, 5.0, 10.0, 15.0}) {
        auto spec = arrival_spec(cfg.gamma, s);
        EnergyBasis b50(cfg, 50), b100(cfg, 100);
        auto p50 = diagonalize(build(spec, b50));
        auto p100 = diagonalize(build(spec, b100));
        std::vector<double> t50, t100;
        for (const auto& p : p50) t50.push_back(p.tau);
        for (const auto& p : p100) t100.push_back(p.tau);
        for (Sector sec : {Sector::Even, Sector::Odd}) {
            RootScanOptions opt;
            opt.r_hi = 60.0; // the deepest requested rung sits near r = 57
            auto roots = characteristic_roots(spec, sec, 5, cfg, opt);
            double max50 = 0.0, max100 = 0.0;
            for (std::size_t n = 0; n < roots.size(); ++n) {
                const double tau =
                    cfg.mu * cfg.l * cfg.l / (2.0 * cfg.hbar * roots[n]);
                int i50 = match_nearest(t50, tau);
                int i100 = match_nearest(t100, tau);
                const double r50 =
                    i50 < 0 ? 1.0 : std::abs(t50[i50] - tau) / tau;
                const double r100 =
                    i100 < 0 ? 1.0 : std::abs(t100[i100] - tau) / tau;
                max50 = std::max(max50, r50);
                max100 = std::max(max100, r100);
                std::printf("  s=%-4g %-4s n=%zu  tau=%.8f  rel(N=50)=%.3e  "
                            "rel(N=100)=%.3e\n",
                            s, sec == Sector::Even ? "even" : "odd", n + 1,
                            tau, r50, r100);
                if (r50 > 1e-3) all_small = false;
            }
            if (!(max100 < max50)) all_improve = false;
            worst50 = std::max(worst50, max50);
            worst100 = std::max(worst100, max100);
        }
    }
    std::printf("  worst relative error: %.3e at N=50, %.3e at N=100  "
                "(%.1f s)\n",
                worst50, worst100, elapsed(t0));
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "two-route agreement: worst rel %.2e vs bound 1e-3 at N=50%s"
                  "; N=100 shrinks every sector max: %s",
                  worst50, all_small ? "" : " (exceeded)",
                  all_improve ? "yes" : "no");
    verdict(1, all_small && all_improve, buf);
}

// ------------------------------------------------------------- criterion 2

void criterion_2() {
    std::printf("\n--- criterion 2: commutator exactness on zero-sum interior "
                "trials (gamma = pi/4) ---\n");
    const SystemConfig cfg = config_at(M_PI / 4);
    EnergyBasis basis(cfg, 50);
    struct Rule {
        const char* name;
        AlphaSequence alpha;
    };
    const Rule rules[] = {
        {"zero", AlphaSequence::zero()},
        {"power:50,1", AlphaSequence::power_law(50.0, 1.0)},
        {"power:50,20", AlphaSequence::power_law(50.0, 20.0)},
        {"power:50,25", AlphaSequence::power_law(50.0, 25.0)},
    };
    bool pass = true;
    double worst = 0.0;
    for (const auto& rule : rules) {
        auto m = gto_matrix(characteristic_spec(cfg.gamma, rule.alpha), basis);
        double max_res = 0.0;
        for (unsigned seed = 1; seed <= 20; ++seed) {
            auto trial = CanonicalTrialVector::make(basis, seed);
            max_res = std::max(max_res, ccr_residual(m, trial.coeffs));
        }
        std::printf("  alpha=%-12s max residual over 20 trials: %.3e\n",
                    rule.name, max_res);
        worst = std::max(worst, max_res);
        if (!(max_res < 1e-12)) pass = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "commutator residuals: worst %.2e vs bound 1e-12 over four "
                  "diagonal rules x 20 trials",
                  worst);
    verdict(2, pass, buf);
}

// ------------------------------------------------------------- criterion 3

double residual_of(const SymmetryScan& scan, Relation rel) {
    for (const auto& r : scan.reports)
        if (r.relation == rel) return r.residual;
    return -1.0;
}

bool holds_of(const SymmetryScan& scan, Relation rel) {
    for (const auto& r : scan.reports)
        if (r.relation == rel) return r.holds;
    return false;
}

void criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    std::printf("\n--- criterion 3: symmetry suite (N = 30 matrices) ---\n");
    bool pass = true;
    std::string notes;

    // deformation off: every applicable relation holds at gamma = pi/2
    {
        EnergyBasis basis(config_at(M_PI / 2), 30);
        auto scan = check_relations(arrival_spec(M_PI / 2, 0.0), basis);
        bool all = true;
        for (const auto& r : scan.reports) {
            std::printf("  s=0  pi/2 %-14s residual %.3e -> %s\n",
                        relation_name(r.relation), r.residual,
                        r.holds ? "holds" : "broken");
            all = all && r.holds;
        }
        if (!all) {
            pass = false;
            notes += " s=0 relations failed;";
        }
    }

    // deformation on: this clause wants *all* relations broken, with
    // residuals strictly increasing in s
    {
        EnergyBasis basis(config_at(M_PI / 2), 30);
        double prev = 0.0;
        bool increasing = true, all_broken = true;
        for (double s : {5.0, 10.0, 15.0}) {
            auto scan = check_relations(arrival_spec(M_PI / 2, s), basis);
            for (const auto& r : scan.reports)
                std::printf("  s=%-3g pi/2 %-14s residual %.3e -> %s\n", s,
                            relation_name(r.relation), r.residual,
                            r.holds ? "holds" : "broken");
            const double tm = residual_of(scan, Relation::ThetaMirror);
            if (!(tm > prev)) increasing = false;
            prev = tm;
            for (const auto& r : scan.reports) all_broken = all_broken && !r.holds;
        }
        if (!increasing) {
            pass = false;
            notes += " time-reversal residual not increasing;";
        }
        if (!all_broken) {
            pass = false;
            notes += " parity conjugation stays exact at every s"
                     " (kernel is parity-even), so 'all broken' fails;";
        }
    }

    // gamma = 0 family: holds at s=0, breaks for s != 0 (witness s = 3)
    {
        EnergyBasis basis(config_at(0.0), 30);
        auto at0 = check_relations(arrival_spec(0.0, 0.0), basis);
        auto at3 = check_relations(arrival_spec(0.0, 3.0), basis);
        for (const auto& r : at0.reports)
            std::printf("  s=0  g=0  %-14s residual %.3e -> %s\n",
                        relation_name(r.relation), r.residual,
                        r.holds ? "holds" : "broken");
        for (const auto& r : at3.reports)
            std::printf("  s=3  g=0  %-14s residual %.3e -> %s\n",
                        relation_name(r.relation), r.residual,
                        r.holds ? "holds" : "broken");
        bool hold0 = true, broken3 = true;
        for (const auto& r : at0.reports) hold0 = hold0 && r.holds;
        for (const auto& r : at3.reports) broken3 = broken3 && !r.holds;
        if (!hold0) {
            pass = false;
            notes += " gamma=0 s=0 relations failed;";
        }
        if (!broken3) {
            pass = false;
            notes += " gamma=0 parity relation survives s=3;";
        }
    }

    // characteristic family: time-reversal conjugation exact with a zero
    // diagonal, visibly violated by the power-law diagonal
    {
        EnergyBasis basis(config_at(M_PI / 4), 30);
        auto cto = check_relations(characteristic_spec(M_PI / 4), basis);
        auto gto = check_relations(
            characteristic_spec(M_PI / 4, AlphaSequence::power_law(50.0, 1.0)),
            basis);
        const double rc = residual_of(cto, Relation::ThetaMirror);
        const double rg = residual_of(gto, Relation::ThetaMirror);
        std::printf("  cto  pi/4 %-14s residual %.3e (bound 1e-10)\n",
                    relation_name(Relation::ThetaMirror), rc);
        std::printf("  gto  pi/4 %-14s residual %.3e (must exceed 1e-3)\n",
                    relation_name(Relation::ThetaMirror), rg);
        if (!(rc < 1e-10 && rg > 1e-3)) {
            pass = false;
            notes += " characteristic-family contrast failed;";
        }
    }

    std::printf("  (%.1f s)\n", elapsed(t0));
    std::string buf = pass ? "all symmetry clauses hold"
                           : "measured exceptions:" + notes;
    verdict(3, pass, buf);
}

// ------------------------------------------------------------- criterion 4

void criterion_4() {
    std::printf("\n--- criterion 4: spectral pairing tau <-> -tau "
                "(gamma = pi/2) ---\n");
    const SystemConfig cfg = config_at(M_PI / 2);
    EnergyBasis basis(cfg, 50);
    auto defect_at = [&](double s) {
        auto pairs = diagonalize(build(arrival_spec(cfg.gamma, s), basis));
        std::vector<double> pos, neg;
        double tau_max = 0.0;
        for (const auto& p : pairs) tau_max = std::max(tau_max, std::abs(p.tau));
        for (const auto& p : pairs) {
            if (std::abs(p.tau) < 1e-12 * tau_max) continue; // truncation zeros
            (p.tau > 0 ? pos : neg).push_back(p.tau);
        }
        std::sort(pos.begin(), pos.end(), std::greater<>());
        std::sort(neg.begin(), neg.end());
        double defect = 0.0;
        for (int n = 0; n < 5 && n < static_cast<int>(pos.size()); ++n) {
            double best = 1.0;
            for (double m : neg)
                best = std::min(best, std::abs(m + pos[n]) / pos[n]);
            defect = std::max(defect, best);
        }
        return defect;
    };
    const double d0 = defect_at(0.0);
    const double d15 = defect_at(15.0);
    std::printf("  s=0  pairing defect over 5 largest rungs: %.3e\n", d0);
    std::printf("  s=15 pairing defect over 5 largest rungs: %.3e\n", d15);
    const bool pass = d0 <= 1e-6 && d15 > 1e-3;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "pairing defect %.2e at s=0 (bound 1e-6), %.2e at s=15 "
                  "(must exceed 1e-3)",
                  d0, d15);
    verdict(4, pass, buf);
}

// ------------------------------------------------------------- criterion 5

void criterion_5() {
    auto t0 = std::chrono::steady_clock::now();
    std::printf("\n--- criterion 5: variance minimum sits at the eigenvalue "
                "(s = 0, first three rungs) ---\n");
    bool pass = true;
    double worst_gap = 0.0, worst_ratio = 0.0;
    struct Case {
        double gamma;
        Sector sector;
        const char* label;
    };
    for (Case c : {Case{M_PI / 2, Sector::Odd, "pi/2 nodal (odd)"},
                   Case{0.0, Sector::Even, "g=0 non-nodal (even)"}}) {
        const SystemConfig cfg = config_at(c.gamma);
        EnergyBasis basis(cfg, 50);
        auto pairs = diagonalize(build(arrival_spec(c.gamma, 0.0), basis));
        auto ladder = rungs_of(pairs, basis, c.sector);
        for (int n = 0; n < 3; ++n) {
            const double tau = ladder[n].tau;
            EvolvingState state(basis, pairs[ladder[n].index].coeffs);
            auto vs = variance_series(state, linspace(0.0, 2.0 * tau, 2001),
                                      tau);
            const double gap = std::abs(vs.t_min - tau) / tau;
            const double ratio =
                std::abs(vs.sigma2_min - *vs.sigma2_at_tau) / *vs.sigma2_at_tau;
            std::printf("  %-22s n=%d tau=%.6f t_min=%.6f gap=%.2f%% "
                        "sigma2 drift=%.2f%%\n",
                        c.label, n + 1, tau, vs.t_min, 100.0 * gap,
                        100.0 * ratio);
            worst_gap = std::max(worst_gap, gap);
            worst_ratio = std::max(worst_ratio, ratio);
            if (gap > 0.05 || ratio > 0.05) pass = false;
        }
    }
    std::printf("  (%.1f s)\n", elapsed(t0));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "worst |t_min - tau| = %.1f%% of tau and worst variance "
                  "drift = %.1f%% (bounds 5%%)",
                  100.0 * worst_gap, 100.0 * worst_ratio);
    verdict(5, pass, buf);
}

// ------------------------------------------------------------- criterion 6

void criterion_6() {
    auto t0 = std::chrono::steady_clock::now();
    std::printf("\n--- criterion 6: |t_min - tau| grows with s at fixed rung "
                "(n = 5) ---\n");
    bool pass = true;
    struct Side {
        double gamma;
        Sector sector;
        const char* label;
        RootScanOptions opt;
    };
    Side sides[2] = {{M_PI / 2, Sector::Odd, "pi/2 odd", {}},
                     {0.0, Sector::Even, "g=0 even", {}}};
    // the deepest pi/2-odd rung sits near r = 57; the g=0-even ladder keeps
    // a tiny first root (r ~ 0.68/s) that must stay inside the window so
    // rung counting stays aligned across s
    sides[0].opt.r_hi = 60.0;
    sides[1].opt.r_lo = 0.03;
    for (const Side& side : sides) {
        const SystemConfig cfg = config_at(side.gamma);
        EnergyBasis basis(cfg, 50);
        double prev = -1.0;
        bool increasing = true;
        for (double s : {0.0, 5.0, 10.0, 15.0}) {
            auto spec = arrival_spec(side.gamma, s);
            auto roots = characteristic_roots(spec, side.sector, 5, cfg,
                                              side.opt);
            const double tau =
                cfg.mu * cfg.l * cfg.l / (2.0 * cfg.hbar * roots[4]);
            auto pairs = diagonalize(build(spec, basis));
            std::vector<double> taus;
            for (const auto& p : pairs) taus.push_back(p.tau);
            int idx = match_nearest(taus, tau);
            if (idx < 0) {
                std::printf("  %-9s s=%-3g rung 5 unmatched in the matrix\n",
                            side.label, s);
                pass = false;
                continue;
            }
            EvolvingState state(basis, pairs[idx].coeffs);
            auto vs = variance_series(state, linspace(0.0, 2.0 * tau, 2001),
                                      tau);
            const double gap = std::abs(vs.t_min - tau);
            std::printf("  %-9s s=%-3g tau5=%.8f gap=%.6e%s\n", side.label, s,
                        tau, gap, gap > prev ? "" : "  (not increasing)");
            if (!(gap > prev)) increasing = false;
            prev = gap;
        }
        if (!increasing) pass = false;
    }
    std::printf("  (%.1f s)\n", elapsed(t0));
    verdict(6, pass,
            pass ? "the n=5 minimum drifts strictly away from tau as s walks "
                   "0, 5, 10, 15 in both sectors"
                 : "gap sequence not strictly increasing (see table)");
}

// ------------------------------------------------------------- criterion 7

void criterion_7() {
    auto t0 = std::chrono::steady_clock::now();
    std::printf("\n--- criterion 7: transition-peak law over adjacent pairs "
                "(gamma = pi/4) ---\n");
    const SystemConfig cfg = config_at(M_PI / 4);
    EnergyBasis basis(cfg, 50);
    struct Row {
        const char* name;
        AlphaSequence alpha;
        double slope = 0.0, intercept = 0.0, min_peak = 0.0;
    };
    Row rows[] = {
        {"zero", AlphaSequence::zero()},
        {"power:50,1", AlphaSequence::power_law(50.0, 1.0)},
        {"power:50,20", AlphaSequence::power_law(50.0, 20.0)},
        {"power:50,25", AlphaSequence::power_law(50.0, 25.0)},
    };
    for (auto& row : rows) {
        auto pairs =
            diagonalize(gto_matrix(characteristic_spec(cfg.gamma, row.alpha),
                                   basis));
        auto study = transition_study(pairs, basis, 10, 2001);
        row.slope = study.slope;
        row.intercept = study.intercept;
        row.min_peak = study.min_peak;
        std::printf("  alpha=%-12s slope=%.6f intercept=%.2e min_peak=%.6f\n",
                    row.name, row.slope, row.intercept, row.min_peak);
    }
    auto obeys_law = [](const Row& r) {
        return r.slope >= 0.9 && r.slope <= 1.1 && r.min_peak > 0.9;
    };
    const bool cto_ok = obeys_law(rows[0]);
    // the contrast clause wants the gently-deformed diagonal to visibly
    // break the law: at least one of {slope band, peak height} must fail
    const bool contrast_ok = !obeys_law(rows[1]);
    std::printf("  (%.1f s)\n", elapsed(t0));
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "zero diagonal: slope %.4f in [0.9, 1.1], min peak %.4f > "
                  "0.9 -> %s; power:50,1 expected to break the law but "
                  "measures slope %.4f, min peak %.4f -> contrast %s",
                  rows[0].slope, rows[0].min_peak, cto_ok ? "ok" : "violated",
                  rows[1].slope, rows[1].min_peak,
                  contrast_ok ? "present" : "absent");
    verdict(7, cto_ok && contrast_ok, buf);
}

// ------------------------------------------------------------- criterion 8

void criterion_8() {
    std::printf("\n--- criterion 8: numerical hygiene ---\n");
    bool pass = true;

    // special-function identity on a 100-point random grid, raw series on
    // both sides
    {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        HypOptions raw;
        raw.use_kummer = false;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            cplxd a{2.0 * u(rng), 2.0 * u(rng)};
            cplxd b{2.5 + 1.5 * u(rng), u(rng)};
            double ang = M_PI * u(rng);
            double rad = 20.0 * std::abs(u(rng));
            cplxd z = rad * cplxd{std::cos(ang), std::sin(ang)};
            cplxd lhs = hyp_1f1(a, b, z, raw);
            cplxd rhs = std::exp(z) * hyp_1f1(b - a, b, -z, raw);
            worst = std::max(worst, std::abs(lhs - rhs) /
                                        std::max({std::abs(lhs),
                                                  std::abs(rhs), 1.0}));
        }
        std::printf("  transformation identity, 100 points: worst %.3e "
                    "(bound 1e-11)\n",
                    worst);
        if (!(worst < 1e-11)) pass = false;
    }

    // derivative recurrence against central differences
    {
        std::mt19937 rng(777);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            cplxd a{1.5 * u(rng), 1.5 * u(rng)};
            cplxd b{2.0 + u(rng), 0.5 * u(rng)};
            cplxd z{6.0 * u(rng), 6.0 * u(rng)};
            const double h = 1e-5;
            cplxd num = (hyp_1f1(a, b, z + h) - hyp_1f1(a, b, z - h)) / (2 * h);
            cplxd exact = (a / b) * hyp_1f1(a + 1.0, b + 1.0, z);
            worst = std::max(worst, std::abs(num - exact) /
                                        std::max(std::abs(exact), 1.0));
        }
        std::printf("  derivative recurrence, 100 points: worst %.3e "
                    "(bound 1e-6)\n",
                    worst);
        if (!(worst < 1e-6)) pass = false;
    }

    // closed-form position matrices against adaptive quadrature
    {
        EnergyBasis basis(config_at(M_PI / 3), 10);
        double worst = 0.0;
        for (int power : {1, 2}) {
            auto m = position_matrix(basis, power);
            for (int i = 0; i < basis.size(); ++i)
                for (int j = 0; j < basis.size(); ++j) {
                    const int k = basis.kof(i), kp = basis.kof(j);
                    auto f = [&](double q) {
                        double w = power == 1 ? q : q * q;
                        return std::conj(eigenfunction(k, q, basis.cfg)) * w *
                               eigenfunction(kp, q, basis.cfg);
                    };
                    cplxd ref = integrate_adaptive(f, -1.0, 1.0, 1e-13);
                    worst = std::max(worst, std::abs(m.entries(i, j) - ref));
                }
        }
        std::printf("  position matrices vs adaptive quadrature: worst %.3e "
                    "(bound 1e-10)\n",
                    worst);
        if (!(worst < 1e-10)) pass = false;
    }

    // evolved-state norms
    {
        EnergyBasis basis(config_at(M_PI / 3), 30);
        std::mt19937 rng(2024);
        std::normal_distribution<double> g;
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::VectorXcd c(basis.size());
            for (int i = 0; i < basis.size(); ++i) c[i] = cplxd{g(rng), g(rng)};
            EvolvingState state(basis, c);
            for (double t : {0.1, 1.7, 13.0})
                worst = std::max(worst,
                                 std::abs(evolve(state, t).coeffs.norm() - 1.0));
        }
        std::printf("  evolved-state norm drift, 5 states x 3 times: worst "
                    "%.3e (bound 1e-12)\n",
                    worst);
        if (!(worst < 1e-12)) pass = false;
    }

    verdict(8, pass,
            pass ? "special-function identities, position-matrix closed "
                   "forms, and evolution norms all inside bounds"
                 : "a hygiene bound was exceeded (see table)");
}

} // namespace

int main() {
    std::printf("tempus acceptance evaluation (desk scale, N = 50)\n");
    std::printf("note: characteristic-family runs use gamma = pi/4; the "
                "operator refuses the degenerate spectra at gamma in "
                "{0, pi/2}, so the nearest non-degenerate gamma stands in.\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::printf("\n%d of 8 criteria passed\n", g_passed);
    std::printf("ACCEPTANCE COMPLETE\n");
    return 0;
}
