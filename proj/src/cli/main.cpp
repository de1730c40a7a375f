// Command-line front end tying construction, spectra, dynamics and symmetry
// into reproducible figure-data runs. Every command writes its manifest
// before any heavy computation and emits CSV with LF endings and shortest
// round-trip doubles, so re-running on the same build is byte-identical.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "tempus/dynamics.hpp"
#include "tempus/io.hpp"
#include "tempus/operators.hpp"
#include "tempus/spectra.hpp"
#include "tempus/symmetry.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace tempus;

namespace {

constexpr double kCcrBound = 1e-12;
constexpr double kMatchGuard = 0.10;

// ---------------------------------------------------------------- parsing

double parse_number(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InvalidParam(std::string(what) + ": cannot parse number '" +
                           text + "'");
    }
}

// symbolic multiples of pi ("pi/2", "-3pi/4", "0.25pi") or plain decimals
double parse_gamma(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw InvalidParam("gamma: empty value");
    auto p = t.find("pi");
    if (p == std::string::npos) return parse_number(t, "gamma");
    double coef = 1.0;
    std::string head = t.substr(0, p);
    if (head == "-")
        coef = -1.0;
    else if (!head.empty() && head != "+")
        coef = parse_number(head, "gamma");
    double den = 1.0;
    std::string tail = t.substr(p + 2);
    if (!tail.empty()) {
        if (tail[0] != '/')
            throw InvalidParam("gamma: cannot parse '" + text + "'");
        den = parse_number(tail.substr(1), "gamma");
        if (den == 0.0) throw InvalidParam("gamma: zero denominator");
    }
    return coef * M_PI / den;
}

// "zero" | "power:c,p" | "explicit:k=v;k=v;..."
AlphaSequence parse_alpha(const std::string& text) {
    if (text.empty() || text == "zero") return AlphaSequence::zero();
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "power") {
        auto comma = body.find(',');
        if (comma == std::string::npos)
            throw InvalidParam("alpha: power rule needs 'power:c,p'");
        double c = parse_number(body.substr(0, comma), "alpha");
        double pw = parse_number(body.substr(comma + 1), "alpha");
        return AlphaSequence::power_law(c, pw);
    }
    if (kind == "explicit") {
        std::map<int, double> table;
        std::size_t pos = 0;
        while (pos < body.size()) {
            auto semi = body.find(';', pos);
            auto len = semi == std::string::npos ? std::string::npos : semi - pos;
            std::string item = body.substr(pos, len);
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw InvalidParam("alpha: explicit rule needs 'explicit:k=v;k=v'");
            int k = static_cast<int>(
                std::llround(parse_number(item.substr(0, eq), "alpha")));
            table[k] = parse_number(item.substr(eq + 1), "alpha");
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        if (table.empty()) throw InvalidParam("alpha: explicit rule is empty");
        return AlphaSequence::explicit_table(std::move(table));
    }
    throw InvalidParam("alpha: unknown rule '" + text +
                       "' (expected zero | power:c,p | explicit:k=v;...)");
}

int parse_branch(const std::string& text) {
    if (text == "+" || text == "pos") return +1;
    if (text == "-" || text == "neg") return -1;
    throw InvalidParam("branch: expected '+' or '-'");
}

// ---------------------------------------------------------------- options

struct Options {
    std::string family = "arrival";
    std::string gamma_text = "pi/4";
    double s = 0.0;
    std::string alpha_text = "zero";
    int N = 50;
    std::string out_dir = "out";
    int jobs = 0;
    std::string preset;

    std::string route = "auto"; // spectrum: a | b | both
    int count = 10;             // spectrum rows per route; transition ladder size

    std::string sector = "any"; // carpet/variance eigen-selection
    std::string branch = "+";
    int n = 1;           // 1-based rung within the filtered ladder
    double tau_near = 0.0; // when nonzero, overrides --n by nearest tau
    int first = 0;       // variance: emit rungs 1..first instead of --n
    int qpoints = 201;
    int tpoints = 201;
    double tmax = 0.0; // 0 = automatic window [0, 2 tau]
    int samples = 2001;

    int pair = 1; // transition: 1-based adjacent pair
    bool study = false;

    int trials = 20; // verify-ccr
};

struct Resolved {
    SystemConfig cfg;
    OperatorSpec spec{ArrivalTime{0.0}, M_PI / 4};
    EnergyBasis basis{SystemConfig{}, 1};
};

Resolved resolve(const Options& o) {
    Resolved r;
    r.cfg.gamma = reduce_gamma(parse_gamma(o.gamma_text));
    if (o.family == "arrival") {
        r.spec = arrival_spec(r.cfg.gamma, o.s);
    } else if (o.family == "cto") {
        if (!(o.alpha_text.empty() || o.alpha_text == "zero"))
            throw InvalidParam("family cto fixes alpha = zero; use --family "
                               "gto for a diagonal rule");
        r.spec = characteristic_spec(r.cfg.gamma);
    } else if (o.family == "gto") {
        r.spec = characteristic_spec(r.cfg.gamma, parse_alpha(o.alpha_text));
    } else {
        throw InvalidParam("family: expected arrival | cto | gto");
    }
    if (o.N < 1) throw InvalidParam("N must be >= 1");
    r.basis = EnergyBasis(r.cfg, o.N);
    return r;
}

EnergyMatrix build_matrix(const OperatorSpec& spec, const EnergyBasis& basis) {
    return spec.is_arrival() ? project_kernel(spec, basis)
                             : gto_matrix(spec, basis);
}

std::string rule_echo(const OperatorSpec& spec) {
    return spec.is_arrival() ? "s=" + format_double(spec.s())
                             : "alpha=" + spec.alpha().describe();
}

const char* sector_name(Sector s) {
    switch (s) {
        case Sector::Even: return "even";
        case Sector::Odd: return "odd";
        default: return "general";
    }
}

// ---------------------------------------------------------------- presets

struct Preset {
    const char* name;
    const char* command;
    const char* family;
    const char* gamma;
    double s;
    const char* alpha;
    const char* sector;
};

// figure-data bundles; s walks {0,5,10,15}, the diagonal rules walk
// {zero, power:50,1, power:50,20, power:50,25}; the characteristic-family
// bundles sit at gamma = pi/4 because the operator refuses the degenerate
// spectra at gamma in {0, pi/2}
const Preset kPresets[] = {
    {"fig1a", "carpet", "arrival", "pi/2", 0.0, "zero", "odd"},
    {"fig1b", "carpet", "arrival", "pi/2", 5.0, "zero", "odd"},
    {"fig1c", "carpet", "arrival", "pi/2", 10.0, "zero", "odd"},
    {"fig1d", "carpet", "arrival", "pi/2", 15.0, "zero", "odd"},
    {"fig2a", "variance", "arrival", "pi/2", 0.0, "zero", "odd"},
    {"fig2b", "variance", "arrival", "pi/2", 5.0, "zero", "odd"},
    {"fig2c", "variance", "arrival", "pi/2", 10.0, "zero", "odd"},
    {"fig2d", "variance", "arrival", "pi/2", 15.0, "zero", "odd"},
    {"fig3a", "carpet", "arrival", "0", 0.0, "zero", "even"},
    {"fig3b", "carpet", "arrival", "0", 5.0, "zero", "even"},
    {"fig3c", "carpet", "arrival", "0", 10.0, "zero", "even"},
    {"fig3d", "carpet", "arrival", "0", 15.0, "zero", "even"},
    {"fig4a", "variance", "arrival", "0", 0.0, "zero", "even"},
    {"fig4b", "variance", "arrival", "0", 5.0, "zero", "even"},
    {"fig4c", "variance", "arrival", "0", 10.0, "zero", "even"},
    {"fig4d", "variance", "arrival", "0", 15.0, "zero", "even"},
    {"fig5a", "transition", "cto", "pi/4", 0.0, "zero", "any"},
    {"fig5b", "transition", "gto", "pi/4", 0.0, "power:50,1", "any"},
    {"fig5c", "transition", "gto", "pi/4", 0.0, "power:50,20", "any"},
    {"fig5d", "transition", "gto", "pi/4", 0.0, "power:50,25", "any"},
    {"fig6a", "transition", "cto", "pi/4", 0.0, "zero", "any"},
    {"fig6b", "transition", "gto", "pi/4", 0.0, "power:50,1", "any"},
    {"fig6c", "transition", "gto", "pi/4", 0.0, "power:50,20", "any"},
    {"fig6d", "transition", "gto", "pi/4", 0.0, "power:50,25", "any"},
};

// presets fill in whatever the command line left at its default; an
// explicit flag always wins over the bundle
void apply_preset(Options& o, const std::string& command, CLI::App* sub) {
    const Preset* p = nullptr;
    for (const auto& q : kPresets)
        if (o.preset == q.name) p = &q;
    if (!p) throw InvalidParam("unknown preset '" + o.preset + "'");
    if (command != p->command)
        throw InvalidParam("preset " + o.preset + " belongs to the " +
                           std::string(p->command) + " command");
    auto absent = [sub](const char* flag) { return sub->count(flag) == 0; };
    if (absent("--family")) o.family = p->family;
    if (absent("--gamma")) o.gamma_text = p->gamma;
    if (absent("--s")) o.s = p->s;
    if (absent("--alpha")) o.alpha_text = p->alpha;
    if (sub->get_option_no_throw("--sector") && absent("--sector"))
        o.sector = p->sector;
    if (command == "carpet" && absent("--tau-near")) o.tau_near = 0.01;
    if (command == "variance" && absent("--first")) o.first = 10;
    if (command == "transition" && o.preset[3] == '6' && absent("--study"))
        o.study = true;
}

// ------------------------------------------------------------ config file

void apply_config_key(Options& o, const std::string& key,
                      const std::string& value) {
    auto num = [&] { return parse_number(value, "config"); };
    auto integer = [&] { return static_cast<int>(std::llround(num())); };
    if (key == "family") o.family = value;
    else if (key == "gamma") o.gamma_text = value;
    else if (key == "s") o.s = num();
    else if (key == "alpha") o.alpha_text = value;
    else if (key == "N") o.N = integer();
    else if (key == "out-dir") o.out_dir = value;
    else if (key == "jobs") o.jobs = integer();
    else if (key == "route") o.route = value;
    else if (key == "count") o.count = integer();
    else if (key == "sector") o.sector = value;
    else if (key == "branch") o.branch = value;
    else if (key == "n") o.n = integer();
    else if (key == "tau-near") o.tau_near = num();
    else if (key == "first") o.first = integer();
    else if (key == "qpoints") o.qpoints = integer();
    else if (key == "tpoints") o.tpoints = integer();
    else if (key == "tmax") o.tmax = num();
    else if (key == "samples") o.samples = integer();
    else if (key == "pair") o.pair = integer();
    else if (key == "study") o.study = (value == "1" || value == "true");
    else if (key == "trials") o.trials = integer();
    else throw InvalidParam("config: unknown key '" + key + "'");
}

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

void apply_config_file(Options& o) {
    const char* path = std::getenv("TEMPUS_CONFIG");
    if (!path || !*path) return;
    std::ifstream f(path);
    if (!f)
        throw InvalidParam(std::string("TEMPUS_CONFIG: cannot open ") + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParam("config line " + std::to_string(lineno) +
                               ": expected key=value");
        apply_config_key(o, trimmed(line.substr(0, eq)),
                         trimmed(line.substr(eq + 1)));
    }
}

// --------------------------------------------------------------- manifest

ordered_json config_json(const Options& o, const Resolved& r) {
    ordered_json j;
    j["family"] = o.family;
    j["gamma"] = r.cfg.gamma;
    j["gamma_text"] = o.gamma_text;
    if (r.spec.is_arrival())
        j["s"] = r.spec.s();
    else
        j["alpha"] = r.spec.alpha().describe();
    j["N"] = o.N;
    j["mu"] = r.cfg.mu;
    j["l"] = r.cfg.l;
    j["hbar"] = r.cfg.hbar;
    return j;
}

void emit_manifest(const std::string& command, const Options& o,
                   const Resolved& r, ordered_json extra,
                   std::vector<std::string> outputs) {
    ordered_json m;
    m["tool"] = "tempus";
    m["version"] = kVersion;
    m["command"] = command;
    if (o.preset.empty())
        m["preset"] = nullptr;
    else
        m["preset"] = o.preset;
    ordered_json cfg = config_json(o, r);
    for (auto& [k, v] : extra.items()) cfg[k] = v;
    m["config"] = cfg;
    m["outputs"] = outputs;
    write_manifest(o.out_dir, m);
    std::cout << "manifest: " << (fs::path(o.out_dir) / "manifest.json").string()
              << "\n";
}

void emit_csv(const Options& o, const std::string& name, const Csv& csv) {
    write_text(fs::path(o.out_dir) / name, csv.render());
    std::cout << "wrote: " << (fs::path(o.out_dir) / name).string() << " ("
              << csv.rows.size() << " rows)\n";
}

// --------------------------------------------------------- eigen-selection

struct Candidate {
    int index = 0; // position in the diagonalize() ordering
    double tau = 0.0;
};

// eigenvalues on the requested branch (tau sign), optionally filtered by
// parity class, ordered by |tau| descending so rung 1 is the largest |tau|
std::vector<Candidate> ladder(const std::vector<Eigenpair>& pairs,
                              const EnergyBasis& basis,
                              const std::string& sector, int branch) {
    std::optional<Sector> want;
    if (sector == "even") want = Sector::Even;
    else if (sector == "odd") want = Sector::Odd;
    else if (sector == "general") want = Sector::General;
    else if (!(sector == "any" || sector == "auto"))
        throw InvalidParam("sector: expected even | odd | general | any");
    std::vector<Candidate> out;
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
        const double tau = pairs[i].tau;
        if (branch > 0 ? tau <= 0.0 : tau >= 0.0) continue;
        if (want && classify_parity(pairs[i].coeffs, basis) != *want) continue;
        out.push_back({i, tau});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return std::abs(a.tau) > std::abs(b.tau);
    });
    return out;
}

int pick_rung(const std::vector<Candidate>& cand, const Options& o) {
    if (cand.empty())
        throw FormUnavailable("eigen-selection: no eigenvalue on the "
                              "requested branch/sector");
    if (o.tau_near != 0.0) {
        int best = 0;
        for (int i = 1; i < static_cast<int>(cand.size()); ++i)
            if (std::abs(cand[i].tau - o.tau_near) <
                std::abs(cand[best].tau - o.tau_near))
                best = i;
        return best;
    }
    if (o.n < 1 || o.n > static_cast<int>(cand.size()))
        throw InvalidParam("n: ladder holds only " +
                           std::to_string(cand.size()) + " eigenvalues");
    return o.n - 1;
}

std::vector<double> tau_window(double tau, double tmax, int points) {
    if (points < 2) throw InvalidParam("grid needs at least 2 points");
    if (tmax > 0.0) return linspace(0.0, tmax, points);
    return tau > 0.0 ? linspace(0.0, 2.0 * tau, points)
                     : linspace(2.0 * tau, 0.0, points);
}

// ---------------------------------------------------------------- spectrum

void run_spectrum(const Options& o) {
    Resolved r = resolve(o);
    bool want_a = false, want_b = false;
    if (o.route == "auto") {
        want_a = true;
        want_b = r.spec.is_arrival();
    } else if (o.route == "a") {
        want_a = true;
    } else if (o.route == "b" || o.route == "both") {
        want_b = true;
        want_a = o.route == "both";
        if (!r.spec.is_arrival())
            throw InvalidParam("route b: the characteristic-equation ladder "
                               "exists for the arrival family only");
    } else {
        throw InvalidParam("route: expected a | b | both | auto");
    }
    if (o.count < 1) throw InvalidParam("count must be >= 1");

    ordered_json extra{{"route", o.route}, {"count", o.count}};
    emit_manifest("spectrum", o, r, extra, {"spectrum.csv"});

    Csv csv;
    csv.header = {"n",           "tau", "route",
                  "sector",      "s_or_alpha_rule",
                  "N",           "convergence_delta"};
    const std::string rule = rule_echo(r.spec);
    std::vector<double> taus_a;

    if (want_a) {
        auto pairs = diagonalize(build_matrix(r.spec, r.basis));
        for (const auto& p : pairs) taus_a.push_back(p.tau);
        EnergyBasis wide(r.cfg, 2 * o.N);
        auto pairs2 = diagonalize(build_matrix(r.spec, wide));
        std::vector<double> taus2;
        for (const auto& p : pairs2) taus2.push_back(p.tau);

        const int rows = std::min<int>(o.count, pairs.size());
        for (int i = 0; i < rows; ++i) {
            const double tau = pairs[i].tau;
            std::string sec = "general";
            if (r.basis.degenerate())
                sec = sector_name(classify_parity(pairs[i].coeffs, r.basis));
            int j = match_nearest(taus2, tau, kMatchGuard);
            auto& row = csv.row();
            row = {std::to_string(i + 1),
                   format_double(tau),
                   "A",
                   sec,
                   rule,
                   std::to_string(o.N),
                   j < 0 ? "" : format_double(std::abs(tau - taus2[j]))};
        }
    }

    if (want_b) {
        std::vector<Sector> sectors;
        if (r.basis.degenerate())
            sectors = {Sector::Even, Sector::Odd};
        else
            sectors = {Sector::General};
        const int per =
            (o.count + static_cast<int>(sectors.size()) - 1) /
            static_cast<int>(sectors.size());
        for (Sector sec : sectors) {
            auto roots = characteristic_roots(r.spec, sec, per, r.cfg);
            for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
                for (int sign : {+1, -1}) {
                    auto pb = route_b_pair(sign * roots[i], sec, r.spec, r.cfg);
                    std::string delta;
                    if (want_a) {
                        int j = match_nearest(taus_a, pb.tau, kMatchGuard);
                        if (j >= 0)
                            delta = format_double(std::abs(pb.tau - taus_a[j]));
                    }
                    auto& row = csv.row();
                    row = {std::to_string(i + 1),
                           format_double(pb.tau),
                           "B",
                           sector_name(sec),
                           rule,
                           std::to_string(o.N),
                           delta};
                }
            }
        }
    }
    emit_csv(o, "spectrum.csv", csv);
}

// ------------------------------------------------------------------ carpet

void run_carpet(const Options& o) {
    Resolved r = resolve(o);
    const int branch = parse_branch(o.branch);
    ordered_json extra{{"sector", o.sector},   {"branch", o.branch},
                       {"n", o.n},             {"tau_near", o.tau_near},
                       {"qpoints", o.qpoints}, {"tpoints", o.tpoints},
                       {"tmax", o.tmax}};
    emit_manifest("carpet", o, r, extra, {"carpet.csv"});

    auto pairs = diagonalize(build_matrix(r.spec, r.basis));
    auto cand = ladder(pairs, r.basis, o.sector, branch);
    const int pick = pick_rung(cand, o);
    const double tau = cand[pick].tau;
    EvolvingState state(r.basis, pairs[cand[pick].index].coeffs);

    auto qgrid = linspace(-r.cfg.l, r.cfg.l, o.qpoints);
    auto tgrid = tau_window(tau, o.tmax, o.tpoints);
    auto grid = carpet(state, qgrid, tgrid);

    Csv csv;
    csv.header = {"q", "t", "density"};
    for (std::size_t i = 0; i < tgrid.size(); ++i)
        for (std::size_t j = 0; j < qgrid.size(); ++j) {
            auto& row = csv.row();
            row = {format_double(qgrid[j]), format_double(tgrid[i]),
                   format_double(grid.density(static_cast<int>(i),
                                              static_cast<int>(j)))};
        }
    std::cout << "selected rung " << pick + 1 << ": tau = " << format_double(tau)
              << "\n";
    emit_csv(o, "carpet.csv", csv);
}

// ---------------------------------------------------------------- variance

void run_variance(const Options& o) {
    Resolved r = resolve(o);
    const int branch = parse_branch(o.branch);
    if (o.samples < 2) throw InvalidParam("samples must be >= 2");
    ordered_json extra{{"sector", o.sector}, {"branch", o.branch},
                       {"n", o.n},           {"first", o.first},
                       {"samples", o.samples}};
    emit_manifest("variance", o, r, extra, {"variance.csv"});

    auto pairs = diagonalize(build_matrix(r.spec, r.basis));
    auto cand = ladder(pairs, r.basis, o.sector, branch);

    std::vector<int> rungs;
    if (o.first > 0) {
        if (o.first > static_cast<int>(cand.size()))
            throw InvalidParam("first: ladder holds only " +
                               std::to_string(cand.size()) + " eigenvalues");
        for (int i = 0; i < o.first; ++i) rungs.push_back(i);
    } else {
        rungs.push_back(pick_rung(cand, o));
    }

    Csv csv;
    csv.header = {"n",     "t",     "sigma2",      "tau",
                  "t_min", "sigma2_min", "sigma2_at_tau"};
    for (int rung : rungs) {
        const double tau = cand[rung].tau;
        EvolvingState state(r.basis, pairs[cand[rung].index].coeffs);
        auto tgrid = tau_window(tau, o.tmax, o.samples);
        auto vs = variance_series(state, tgrid, tau);
        const std::string label = std::to_string(rung + 1);
        for (std::size_t i = 0; i < tgrid.size(); ++i) {
            auto& row = csv.row();
            row = {label, format_double(vs.tgrid[i]),
                   format_double(vs.sigma2[i]), "", "", "", ""};
        }
        auto& sum = csv.row();
        sum = {label,
               "",
               "",
               format_double(tau),
               format_double(vs.t_min),
               format_double(vs.sigma2_min),
               format_double(*vs.sigma2_at_tau)};
        std::cout << "rung " << label << ": tau = " << format_double(tau)
                  << ", t_min = " << format_double(vs.t_min)
                  << ", sigma2(t_min)/sigma2(tau) = "
                  << format_double(vs.sigma2_min / *vs.sigma2_at_tau) << "\n";
    }
    emit_csv(o, "variance.csv", csv);
}

// -------------------------------------------------------------- transition

void run_transition(const Options& o) {
    Resolved r = resolve(o);
    if (o.count < 2) throw InvalidParam("count must be >= 2");
    if (o.samples < 2) throw InvalidParam("samples must be >= 2");
    ordered_json extra{{"count", o.count},
                       {"samples", o.samples},
                       {"pair", o.pair},
                       {"study", o.study}};
    std::vector<std::string> outputs{"transition.csv"};
    if (o.study) outputs.push_back("transition_regression.csv");
    emit_manifest("transition", o, r, extra, outputs);

    auto pairs = diagonalize(build_matrix(r.spec, r.basis));
    auto study = transition_study(pairs, r.basis, o.count, o.samples);

    Csv csv;
    csv.header = {"pair", "t", "prob", "tau_diff", "t_max", "peak"};
    auto emit_series = [&csv](const TransitionSeries& ts, double dtau,
                              int label) {
        for (std::size_t i = 0; i < ts.tgrid.size(); ++i) {
            auto& row = csv.row();
            row = {std::to_string(label), format_double(ts.tgrid[i]),
                   format_double(ts.prob[i]), "", "", ""};
        }
        auto& sum = csv.row();
        sum = {std::to_string(label), "", "", format_double(dtau),
               format_double(ts.t_max), format_double(ts.peak)};
    };

    if (o.study) {
        for (std::size_t i = 0; i < study.series.size(); ++i)
            emit_series(study.series[i], study.dtau[i], static_cast<int>(i) + 1);
        emit_csv(o, "transition.csv", csv);

        Csv reg;
        reg.header = {"pairs", "slope", "intercept", "min_peak"};
        auto& row = reg.row();
        row = {std::to_string(study.series.size()), format_double(study.slope),
               format_double(study.intercept), format_double(study.min_peak)};
        std::cout << "regression over " << study.series.size()
                  << " pairs: slope = " << format_double(study.slope)
                  << ", intercept = " << format_double(study.intercept)
                  << ", min peak = " << format_double(study.min_peak) << "\n";
        emit_csv(o, "transition_regression.csv", reg);
    } else {
        if (o.pair < 1 || o.pair > static_cast<int>(study.series.size()))
            throw InvalidParam("pair: study holds " +
                               std::to_string(study.series.size()) +
                               " adjacent pairs");
        const auto& ts = study.series[o.pair - 1];
        const double dtau = study.dtau[o.pair - 1];
        emit_series(ts, dtau, o.pair);
        std::cout << "pair " << o.pair << ": dtau = " << format_double(dtau)
                  << ", t_max = " << format_double(ts.t_max)
                  << ", peak = " << format_double(ts.peak) << "\n";
        emit_csv(o, "transition.csv", csv);
    }
}

// ---------------------------------------------------------------- symmetry

void run_symmetry(const Options& o) {
    Resolved r = resolve(o);
    emit_manifest("symmetry", o, r, ordered_json::object(), {"symmetry.csv"});

    auto scan = check_relations(r.spec, r.basis);
    Csv csv;
    csv.header = {"relation", "gamma", "family",
                  "param",    "residual", "tolerance", "verdict"};
    for (const auto& rep : scan.reports) {
        auto& row = csv.row();
        row = {relation_name(rep.relation),
               format_double(r.cfg.gamma),
               o.family,
               rule_echo(r.spec),
               format_double(rep.residual),
               format_double(rep.tolerance),
               rep.holds ? "holds" : "broken"};
    }
    std::cout << "classification: " << scan.classification << "\n";
    emit_csv(o, "symmetry.csv", csv);
}

// -------------------------------------------------------------- verify-ccr

void run_ccr(const Options& o) {
    Resolved r = resolve(o);
    if (o.trials < 1) throw InvalidParam("trials must be >= 1");
    ordered_json extra{{"trials", o.trials}, {"bound", kCcrBound}};
    emit_manifest("verify-ccr", o, r, extra, {"ccr.csv"});

    auto m = build_matrix(r.spec, r.basis);
    Csv csv;
    csv.header = {"trial", "seed", "residual", "bound", "verdict"};
    double worst = 0.0;
    for (int t = 1; t <= o.trials; ++t) {
        auto trial = CanonicalTrialVector::make(r.basis, static_cast<unsigned>(t));
        double res = ccr_residual(m, trial.coeffs);
        worst = std::max(worst, res);
        auto& row = csv.row();
        row = {std::to_string(t), std::to_string(t), format_double(res),
               format_double(kCcrBound), res < kCcrBound ? "within" : "exceeded"};
    }
    std::cout << "max residual over " << o.trials
              << " trials: " << format_double(worst) << "\n";
    emit_csv(o, "ccr.csv", csv);
}

// -------------------------------------------------------------------- main

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--family", o.family, "arrival | cto | gto");
    sub->add_option("--gamma", o.gamma_text,
                    "boundary phase; symbolic pi forms or decimals");
    sub->add_option("--s", o.s, "arrival-family deformation parameter");
    sub->add_option("--alpha", o.alpha_text,
                    "diagonal rule: zero | power:c,p | explicit:k=v;...");
    sub->add_option("--N", o.N, "basis half-width (2N+1 states)");
    sub->add_option("--out-dir", o.out_dir, "output directory");
    sub->add_option("--jobs", o.jobs, "worker threads (0 = library default)");
    sub->add_option("--preset", o.preset, "figure-data bundle fig1a..fig6d");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tempus: time-operator toolkit for a particle in a box"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options o;
    try {
        apply_config_file(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalue ladders");
    add_common(spectrum, o);
    spectrum->add_option("--route", o.route, "a | b | both | auto");
    spectrum->add_option("--count", o.count, "eigenvalues per route");

    auto* carpet_cmd = app.add_subcommand("carpet", "|psi(q,t)|^2 on a grid");
    add_common(carpet_cmd, o);
    carpet_cmd->add_option("--sector", o.sector, "even | odd | general | any");
    carpet_cmd->add_option("--branch", o.branch, "tau sign: + | -");
    carpet_cmd->add_option("--n", o.n, "1-based rung in the filtered ladder");
    carpet_cmd->add_option("--tau-near", o.tau_near,
                           "pick the rung with tau nearest this value");
    carpet_cmd->add_option("--qpoints", o.qpoints, "position samples");
    carpet_cmd->add_option("--tpoints", o.tpoints, "time samples");
    carpet_cmd->add_option("--tmax", o.tmax, "time window (0 = 2 tau)");

    auto* variance = app.add_subcommand("variance", "sigma^2(t) series");
    add_common(variance, o);
    variance->add_option("--sector", o.sector, "even | odd | general | any");
    variance->add_option("--branch", o.branch, "tau sign: + | -");
    variance->add_option("--n", o.n, "1-based rung in the filtered ladder");
    variance->add_option("--tau-near", o.tau_near,
                         "pick the rung with tau nearest this value");
    variance->add_option("--first", o.first, "emit rungs 1..first");
    variance->add_option("--samples", o.samples, "time samples");
    variance->add_option("--tmax", o.tmax, "time window (0 = 2 tau)");

    auto* transition = app.add_subcommand("transition", "transition peaks");
    add_common(transition, o);
    transition->add_option("--count", o.count, "ladder size for the study");
    transition->add_option("--samples", o.samples, "time samples");
    transition->add_option("--pair", o.pair, "1-based adjacent pair");
    transition->add_flag("--study", o.study, "all pairs plus regression");

    auto* symmetry = app.add_subcommand("symmetry", "conjugation relations");
    add_common(symmetry, o);

    auto* ccr = app.add_subcommand("verify-ccr", "commutator residuals");
    add_common(ccr, o);
    ccr->add_option("--trials", o.trials, "seeded trial vectors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    try {
        if (!o.preset.empty()) apply_preset(o, command, sub);
#ifdef _OPENMP
        if (o.jobs > 0) omp_set_num_threads(o.jobs);
#endif
        if (command == "spectrum") run_spectrum(o);
        else if (command == "carpet") run_carpet(o);
        else if (command == "variance") run_variance(o);
        else if (command == "transition") run_transition(o);
        else if (command == "symmetry") run_symmetry(o);
        else run_ccr(o);
    } catch (const InvalidParam& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SingularGamma& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateSpectrum& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
